#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "chaoscrypt/cipher.hpp"

namespace chaoscrypt {

/// Position of a key on a domain grid: a = a_lo + ia * increment, same for b.
struct GridIndex {
    std::size_t ia = 0;
    std::size_t ib = 0;

    friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Rectangular (a, b) box sampled on a regular grid.
struct KeyDomain {
    MapKind kind = MapKind::ArnoldCat;
    double a_lo = 0.0;
    double b_lo = 0.0;
    double a_hi = 0.0;
    double b_hi = 0.0;
    double increment = 1e-4;
    double n_modulus = 1.0;  ///< copied into every grid key

    /// Bounds finite, lo <= hi per axis, increment finite and > 0.
    void validate() const;

    /// floor((hi - lo) / increment) + 1, tolerant of representation error in
    /// the quotient (0.005 / 0.0001 counts 51 points, not 50).
    std::size_t a_count() const;
    std::size_t b_count() const;
    std::size_t size() const { return a_count() * b_count(); }

    /// Lattice coordinates, rounded to a few decimals past the increment so a
    /// decimal key lying on the lattice (e.g. 0.0034 with increment 0.0001)
    /// is reproduced bit-for-bit.
    double a_at(std::size_t ia) const;
    double b_at(std::size_t ib) const;

    /// Row-major: flat = ia * b_count() + ib.
    GridIndex index_of(std::size_t flat) const;
    Key key_at(GridIndex idx) const;
    Key key_at(std::size_t flat) const { return key_at(index_of(flat)); }

    /// Within the box, allowing half an increment of slack on every side.
    bool contains(const Key& key) const;

    /// Nearest grid point to `key` (clamped to the box).
    GridIndex snap(const Key& key) const;

    /// The same lattice widened by whole increments until `key` is inside.
    KeyDomain covering(const Key& key) const;

    /// Copy with lo/hi swapped on any axis where they are reversed.
    KeyDomain normalized() const;

    friend bool operator==(const KeyDomain&, const KeyDomain&) = default;
};

/// Grid cardinality of a domain at a given per-axis resolution.
struct KeySpace {
    std::uint64_t a_count = 0;
    std::uint64_t b_count = 0;

    double total() const { return static_cast<double>(a_count) * static_cast<double>(b_count); }
    double bits() const;
    /// total() > 2^exponent
    bool exceeds_power_of_two(int exponent) const;
};

/// Product over axes of floor((hi - lo) / resolution) + 1.
/// Throws DomainError on reversed bounds or non-positive resolution.
KeySpace key_space_size(const KeyDomain& domain, double resolution);

/// The key space each cipher is specified over, and the size reported for it
/// in the original analysis tables.
KeyDomain reference_key_space(MapKind kind);
double reference_key_space_size(MapKind kind);
inline constexpr double kReferenceKeySpaceResolution = 1e-8;

}  // namespace chaoscrypt
