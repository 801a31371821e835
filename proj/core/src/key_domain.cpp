#include "chaoscrypt/key_domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

namespace chaoscrypt {

namespace {

// Absorbs representation error in (hi - lo) / step before flooring.
constexpr double kCountSlack = 1e-9;

// Absolute slack for small quotients, relative once the quotient's own
// rounding error outgrows it (4.1 / 1e-8 lands just under 4.1e8).
double slack(double quotient) { return std::max(kCountSlack, std::fabs(quotient) * 1e-12); }

std::uint64_t axis_count(double lo, double hi, double step) {
    const double q = (hi - lo) / step;
    return static_cast<std::uint64_t>(std::floor(q + slack(q))) + 1;
}

std::size_t nearest_index(double value, double lo, double step, std::size_t count) {
    const double raw = std::round((value - lo) / step);
    if (!(raw > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(raw), count - 1);
}

double lattice_value(double lo, std::size_t i, double step) {
    const double raw = lo + static_cast<double>(i) * step;
    // Round to six decimal places below the increment's leading digit.
    const int places = std::clamp(6 - static_cast<int>(std::floor(std::log10(step))), 0, 40);
    char buf[512];
    const auto written = std::to_chars(buf, buf + sizeof buf, raw, std::chars_format::fixed, places);
    if (written.ec != std::errc{}) return raw;
    double out = raw;
    std::from_chars(buf, written.ptr, out);
    return out == 0.0 ? 0.0 : out;
}

}  // namespace

double KeyDomain::a_at(std::size_t ia) const { return lattice_value(a_lo, ia, increment); }
double KeyDomain::b_at(std::size_t ib) const { return lattice_value(b_lo, ib, increment); }

void KeyDomain::validate() const {
    for (double v : {a_lo, b_lo, a_hi, b_hi}) {
        if (!std::isfinite(v)) throw DomainError("key domain: bounds must be finite");
    }
    if (a_hi < a_lo || b_hi < b_lo) {
        throw DomainError("key domain: lower bound exceeds upper bound");
    }
    if (!std::isfinite(increment) || !(increment > 0.0)) {
        throw DomainError("key domain: increment must be finite and > 0");
    }
    if (!std::isfinite(n_modulus) || !(n_modulus > 0.0)) {
        throw DomainError("key domain: n_modulus must be finite and > 0");
    }
}

std::size_t KeyDomain::a_count() const { return axis_count(a_lo, a_hi, increment); }
std::size_t KeyDomain::b_count() const { return axis_count(b_lo, b_hi, increment); }

GridIndex KeyDomain::index_of(std::size_t flat) const {
    const std::size_t nb = b_count();
    return {flat / nb, flat % nb};
}

Key KeyDomain::key_at(GridIndex idx) const {
    return Key{kind, MapParams{a_at(idx.ia), b_at(idx.ib), n_modulus}};
}

bool KeyDomain::contains(const Key& key) const {
    const double slack = 0.5 * increment;
    return key.params.a >= a_lo - slack && key.params.a <= a_hi + slack &&
           key.params.b >= b_lo - slack && key.params.b <= b_hi + slack;
}

GridIndex KeyDomain::snap(const Key& key) const {
    return {nearest_index(key.params.a, a_lo, increment, a_count()),
            nearest_index(key.params.b, b_lo, increment, b_count())};
}

KeyDomain KeyDomain::covering(const Key& key) const {
    KeyDomain out = *this;
    auto widen = [&](double value, double& lo, double& hi) {
        if (value < lo) {
            const auto steps = static_cast<std::size_t>(std::ceil((lo - value) / increment - slack((lo - value) / increment)));
            lo = lattice_value(lo, 0, increment) - static_cast<double>(steps) * increment;
            lo = lattice_value(lo, 0, increment);
        }
        if (value > hi) {
            // hi stays on the lattice anchored at lo.
            const auto steps = static_cast<std::size_t>(std::ceil((value - lo) / increment - slack((value - lo) / increment)));
            hi = std::max(hi, lattice_value(lo, steps, increment));
        }
    };
    widen(key.params.a, out.a_lo, out.a_hi);
    widen(key.params.b, out.b_lo, out.b_hi);
    return out;
}

KeyDomain KeyDomain::normalized() const {
    KeyDomain out = *this;
    if (out.a_hi < out.a_lo) std::swap(out.a_lo, out.a_hi);
    if (out.b_hi < out.b_lo) std::swap(out.b_lo, out.b_hi);
    return out;
}

double KeySpace::bits() const {
    return std::log2(static_cast<double>(a_count)) + std::log2(static_cast<double>(b_count));
}

bool KeySpace::exceeds_power_of_two(int exponent) const {
    return bits() > static_cast<double>(exponent);
}

KeySpace key_space_size(const KeyDomain& domain, double resolution) {
    if (!std::isfinite(resolution) || !(resolution > 0.0)) {
        throw DomainError("key_space_size: resolution must be finite and > 0");
    }
    KeyDomain probe = domain;
    probe.increment = resolution;
    probe.validate();
    return {axis_count(domain.a_lo, domain.a_hi, resolution),
            axis_count(domain.b_lo, domain.b_hi, resolution)};
}

KeyDomain reference_key_space(MapKind kind) {
    if (kind == MapKind::ArnoldCat) return KeyDomain{kind, -5.0, 0.4, -0.9, 1.5};
    return KeyDomain{kind, 1.8, -0.59, 2.9, 0.2};
}

double reference_key_space_size(MapKind kind) {
    return kind == MapKind::ArnoldCat ? 5e16 : 9e14;
}

}  // namespace chaoscrypt
