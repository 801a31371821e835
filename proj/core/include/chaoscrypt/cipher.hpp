#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chaoscrypt/maps.hpp"

namespace chaoscrypt {

using Byte = std::uint8_t;
using PlainText = std::vector<Byte>;
/// Ciphertext symbols, each in [0, symbol_modulus).
using CipherText = std::vector<Byte>;

/// The secret key: the map selector plus its (a, b) parameters.
/// `params.n_modulus` travels with the key but is public.
struct Key {
    MapKind kind = MapKind::ArnoldCat;
    MapParams params;

    friend bool operator==(const Key&, const Key&) = default;
};

/// Starting points of the two maps used when a config does not set one.
State default_initial_state(MapKind kind) noexcept;

/// Public cipher parameters.
struct CipherConfig {
    std::size_t n1 = 3;  ///< map iterations before the first mix
    std::size_t n2 = 3;  ///< map iterations before the second mix
    unsigned symbol_modulus = 256;
    double quant_scale = 1e6;
    double reinject_gain = 1.0;
    /// Unset means `default_initial_state(kind)`.
    std::optional<State> initial_state;

    State start_state(MapKind kind) const noexcept {
        return initial_state.value_or(default_initial_state(kind));
    }

    /// n1, n2 >= 1; 2 <= symbol_modulus <= 256; quant_scale finite and >= 0
    /// (zero is a degenerate setting kept for analysis harnesses);
    /// reinject_gain and initial_state finite.
    void validate() const;

    friend bool operator==(const CipherConfig&, const CipherConfig&) = default;
};

/// Intermediate values of one encrypted symbol.
struct SymbolTrace {
    unsigned z = 0;  ///< plaintext mixed with the first quantized state
    unsigned y = 0;  ///< emitted ciphertext symbol
    State s1;        ///< state after the n1 pre-mix iterations
    State s2;        ///< state after the n2 post-mix iterations
};

/// floor(|s.x| * quant_scale) mod symbol_modulus.
unsigned quantize(State s, const CipherConfig& cfg);

/// The transmitter/receiver state machine. Encryption and decryption walk
/// the same state sequence, so one instance drives either direction.
class StreamCipher {
public:
    StreamCipher(const Key& key, const CipherConfig& cfg);

    Byte encrypt(Byte plain, SymbolTrace* trace = nullptr);
    Byte decrypt(Byte symbol);

    /// Number of symbols processed so far.
    std::size_t position() const noexcept { return position_; }
    State state() const noexcept { return state_; }

private:
    State advance(std::size_t iterations);
    void reinject(unsigned z);

    Key key_;
    CipherConfig cfg_;
    State state_;
    std::size_t position_ = 0;
};

struct EncryptResult {
    CipherText ciphertext;
    std::vector<SymbolTrace> trace;
};

EncryptResult encrypt(std::span<const Byte> plaintext, const Key& key, const CipherConfig& cfg);

/// Same output as `encrypt(...).ciphertext`, without recording traces.
CipherText encrypt_symbols(std::span<const Byte> plaintext, const Key& key,
                           const CipherConfig& cfg);

PlainText decrypt(std::span<const Byte> ciphertext, const Key& key, const CipherConfig& cfg);

}  // namespace chaoscrypt
