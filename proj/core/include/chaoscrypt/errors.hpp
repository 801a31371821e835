#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoscrypt/maps_fwd.hpp"

namespace chaoscrypt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (bad modulus,
/// non-finite input, byte outside the symbol alphabet, reversed domain, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input: hex, key JSON, config JSON, report CSV.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A map step produced a non-finite coordinate or left the divergence bound.
///
/// `step()` is the zero-based index of the failing step within the
/// iteration that raised it. Cipher operations additionally record the
/// index of the symbol being processed.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t step,
                    std::optional<std::size_t> symbol = std::nullopt)
        : Error(what), step_(step), symbol_(symbol) {}

    std::size_t step() const noexcept { return step_; }
    std::optional<std::size_t> symbol() const noexcept { return symbol_; }

private:
    std::size_t step_;
    std::optional<std::size_t> symbol_;
};

/// Raised by `trajectory()`; carries every point computed before the failure.
class TrajectoryDivergence : public DivergenceError {
public:
    TrajectoryDivergence(const std::string& what, std::size_t step,
                         std::vector<State> prefix)
        : DivergenceError(what, step), prefix_(std::move(prefix)) {}

    const std::vector<State>& prefix() const noexcept { return prefix_; }

private:
    std::vector<State> prefix_;
};

}  // namespace chaoscrypt
