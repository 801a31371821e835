#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "chaoscrypt/errors.hpp"
#include "chaoscrypt/maps_fwd.hpp"

namespace chaoscrypt {

enum class MapKind : std::uint8_t { ArnoldCat, Duffing };

/// "arnold" / "duffing".
std::string_view to_string(MapKind kind) noexcept;
/// Accepts "arnold", "arnold_cat", "arnoldcat", "cat", "duffing" (case-insensitive).
MapKind parse_map_kind(std::string_view text);

/// Map parameters. (a, b) is the secret part of a cipher key; n_modulus is
/// the Arnold torus modulus and is ignored by the Duffing map.
struct MapParams {
    double a = 0.0;
    double b = 0.0;
    double n_modulus = 1.0;

    friend bool operator==(const MapParams&, const MapParams&) = default;
};

/// Any coordinate with magnitude above this bound is treated as divergence.
inline constexpr double kDivergenceBound = 1e6;

/// How the Arnold x-update `(a-1) mod [2x + y, N]` is read: the two-argument
/// Mod is applied first and (a-1) scales the result.
inline constexpr std::string_view kArnoldInterpretation = "scaled-x";

/// Remainder of `dividend / divisor` carrying the sign of the dividend,
/// extended to reals: r = d - m * trunc(d / m).
///
/// Throws DomainError when either argument is non-finite or divisor <= 0.
double signed_mod(double dividend, double divisor);

/// x' = (a - 1) * signed_mod(2x + y, N),  y' = signed_mod(x + (1 - b) y, N)
State arnold_step(State s, const MapParams& p);

/// x' = y,  y' = -b x + a y - y^3
State duffing_step(State s, const MapParams& p);

State step(MapKind kind, State s, const MapParams& p);

/// n-fold composition of `step`. A DivergenceError reports the zero-based
/// index of the step that failed.
State iterate(MapKind kind, State s, const MapParams& p, std::size_t n);

/// The orbit [s0, step(s0), ..., step^n(s0)] (n + 1 points).
/// On divergence throws TrajectoryDivergence holding the points computed so far.
std::vector<State> trajectory(MapKind kind, State s0, const MapParams& p, std::size_t n);

/// Largest Euclidean separation, over steps 1..n, between the orbit of s0
/// and the orbit of s0 + (delta, 0).
double divergence_measure(MapKind kind, State s0, double delta, const MapParams& p,
                          std::size_t n);

/// CSV with header `k,x,y` and 17 significant digits per coordinate.
void write_trajectory_csv(std::ostream& out, std::span<const State> points);

/// Throws DomainError unless a, b are finite and n_modulus is finite and > 0.
void validate(const MapParams& p);

}  // namespace chaoscrypt
