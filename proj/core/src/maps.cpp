#include "chaoscrypt/maps.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace chaoscrypt {

namespace {

bool within_bound(const State& s) noexcept {
    // Negated comparisons so NaN fails the test.
    return std::abs(s.x) <= kDivergenceBound && std::abs(s.y) <= kDivergenceBound;
}

State arnold_unchecked(State s, const MapParams& p) {
    const double n = p.n_modulus;
    return {(p.a - 1.0) * std::fmod(2.0 * s.x + s.y, n),
            std::fmod(s.x + (1.0 - p.b) * s.y, n)};
}

State duffing_unchecked(State s, const MapParams& p) {
    return {s.y, -p.b * s.x + p.a * s.y - s.y * s.y * s.y};
}

[[noreturn]] void throw_divergence(MapKind kind, std::size_t step, const State& s) {
    throw DivergenceError(std::string(to_string(kind)) + " map diverged at step " +
                              std::to_string(step) + " (x=" + std::to_string(s.x) +
                              ", y=" + std::to_string(s.y) + ")",
                          step);
}

void check_state(const State& s, const char* what) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y)) {
        throw DomainError(std::string(what) + ": state must be finite");
    }
}

template <typename StepFn>
State iterate_with(MapKind kind, State s, const MapParams& p, std::size_t n, StepFn fn) {
    for (std::size_t i = 0; i < n; ++i) {
        s = fn(s, p);
        if (!within_bound(s)) throw_divergence(kind, i, s);
    }
    return s;
}

}  // namespace

std::string_view to_string(MapKind kind) noexcept {
    switch (kind) {
        case MapKind::ArnoldCat: return "arnold";
        case MapKind::Duffing: return "duffing";
    }
    return "unknown";
}

MapKind parse_map_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "arnold" || lower == "arnold_cat" || lower == "arnoldcat" || lower == "cat") {
        return MapKind::ArnoldCat;
    }
    if (lower == "duffing") return MapKind::Duffing;
    throw DomainError("unknown map kind '" + std::string(text) + "'");
}

void validate(const MapParams& p) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
        throw DomainError("map parameters a and b must be finite");
    }
    if (!std::isfinite(p.n_modulus) || !(p.n_modulus > 0.0)) {
        throw DomainError("map modulus N must be finite and > 0");
    }
}

double signed_mod(double dividend, double divisor) {
    if (!std::isfinite(dividend) || !std::isfinite(divisor)) {
        throw DomainError("signed_mod: arguments must be finite");
    }
    if (!(divisor > 0.0)) throw DomainError("signed_mod: divisor must be > 0");
    // fmod is exact and keeps the sign of the dividend.
    return std::fmod(dividend, divisor);
}

State arnold_step(State s, const MapParams& p) {
    validate(p);
    check_state(s, "arnold_step");
    const State next = arnold_unchecked(s, p);
    if (!within_bound(next)) throw_divergence(MapKind::ArnoldCat, 0, next);
    return next;
}

State duffing_step(State s, const MapParams& p) {
    validate(p);
    check_state(s, "duffing_step");
    const State next = duffing_unchecked(s, p);
    if (!within_bound(next)) throw_divergence(MapKind::Duffing, 0, next);
    return next;
}

State step(MapKind kind, State s, const MapParams& p) {
    return kind == MapKind::ArnoldCat ? arnold_step(s, p) : duffing_step(s, p);
}

State iterate(MapKind kind, State s, const MapParams& p, std::size_t n) {
    validate(p);
    check_state(s, "iterate");
    if (kind == MapKind::ArnoldCat) return iterate_with(kind, s, p, n, arnold_unchecked);
    return iterate_with(kind, s, p, n, duffing_unchecked);
}

std::vector<State> trajectory(MapKind kind, State s0, const MapParams& p, std::size_t n) {
    if (n < 1) throw DomainError("trajectory: n must be >= 1");
    validate(p);
    check_state(s0, "trajectory");
    std::vector<State> points;
    points.reserve(n + 1);
    points.push_back(s0);
    for (std::size_t i = 0; i < n; ++i) {
        const State next = kind == MapKind::ArnoldCat ? arnold_unchecked(points.back(), p)
                                                      : duffing_unchecked(points.back(), p);
        if (!within_bound(next)) {
            throw TrajectoryDivergence(std::string(to_string(kind)) +
                                           " trajectory diverged at step " + std::to_string(i),
                                       i, std::move(points));
        }
        points.push_back(next);
    }
    return points;
}

double divergence_measure(MapKind kind, State s0, double delta, const MapParams& p,
                          std::size_t n) {
    if (!std::isfinite(delta) || !(delta > 0.0)) {
        throw DomainError("divergence_measure: delta must be finite and > 0");
    }
    validate(p);
    check_state(s0, "divergence_measure");
    State base = s0;
    State shifted{s0.x + delta, s0.y};
    double widest = 0.0;
    const auto advance = kind == MapKind::ArnoldCat ? arnold_unchecked : duffing_unchecked;
    for (std::size_t k = 0; k < n; ++k) {
        base = advance(base, p);
        shifted = advance(shifted, p);
        if (!within_bound(base)) throw_divergence(kind, k, base);
        if (!within_bound(shifted)) throw_divergence(kind, k, shifted);
        widest = std::max(widest, std::hypot(base.x - shifted.x, base.y - shifted.y));
    }
    return widest;
}

void write_trajectory_csv(std::ostream& out, std::span<const State> points) {
    out << "k,x,y\n";
    char buf[64];
    auto put = [&](double v) {
        auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        out.write(buf, res.ptr - buf);
    };
    for (std::size_t k = 0; k < points.size(); ++k) {
        out << k << ',';
        put(points[k].x);
        out << ',';
        put(points[k].y);
        out << '\n';
    }
}

}  // namespace chaoscrypt
