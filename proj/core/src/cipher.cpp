#include "chaoscrypt/cipher.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace chaoscrypt {

State default_initial_state(MapKind kind) noexcept {
    return kind == MapKind::ArnoldCat ? State{0.5, 0.06} : State{-0.04, 0.2};
}

void CipherConfig::validate() const {
    if (n1 < 1 || n2 < 1) throw DomainError("cipher config: n1 and n2 must be >= 1");
    if (symbol_modulus < 2 || symbol_modulus > 256) {
        throw DomainError("cipher config: symbol_modulus must be in [2, 256]");
    }
    if (!std::isfinite(quant_scale) || quant_scale < 0.0) {
        throw DomainError("cipher config: quant_scale must be finite and >= 0");
    }
    if (!std::isfinite(reinject_gain)) throw DomainError("cipher config: reinject_gain must be finite");
    if (initial_state && (!std::isfinite(initial_state->x) || !std::isfinite(initial_state->y))) {
        throw DomainError("cipher config: initial_state must be finite");
    }
}

unsigned quantize(State s, const CipherConfig& cfg) {
    if (!std::isfinite(s.x)) throw DomainError("quantize: state must be finite");
    const double scaled = std::floor(std::abs(s.x) * cfg.quant_scale);
    if (!std::isfinite(scaled)) throw DomainError("quantize: scaled state overflows");
    // scaled is an integer; below 2^63 the integer remainder is exact and much cheaper
    if (scaled < 0x1p63) return static_cast<unsigned>(static_cast<std::uint64_t>(scaled) % cfg.symbol_modulus);
    return static_cast<unsigned>(std::fmod(scaled, static_cast<double>(cfg.symbol_modulus)));
}

StreamCipher::StreamCipher(const Key& key, const CipherConfig& cfg)
    : key_(key), cfg_(cfg), state_(cfg.start_state(key.kind)) {
    validate(key_.params);
    cfg_.validate();
}

State StreamCipher::advance(std::size_t iterations) {
    try {
        state_ = iterate(key_.kind, state_, key_.params, iterations);
    } catch (const DivergenceError& e) {
        throw DivergenceError(std::string(e.what()) + " while processing symbol " +
                                  std::to_string(position_),
                              e.step(), position_);
    }
    return state_;
}

void StreamCipher::reinject(unsigned z) {
    const double kick = cfg_.reinject_gain * static_cast<double>(z) /
                        static_cast<double>(cfg_.symbol_modulus);
    state_.x = std::fmod(state_.x + kick, 1.0);
    ++position_;
}

Byte StreamCipher::encrypt(Byte plain, SymbolTrace* trace) {
    const unsigned m = cfg_.symbol_modulus;
    if (plain >= m) {
        throw DomainError("plaintext byte " + std::to_string(plain) + " at index " +
                          std::to_string(position_) + " is outside [0, " + std::to_string(m) + ")");
    }
    const State s1 = advance(cfg_.n1);
    const unsigned z = (plain + quantize(s1, cfg_)) % m;
    const State s2 = advance(cfg_.n2);
    const unsigned y = (z + quantize(s2, cfg_)) % m;
    if (trace) *trace = SymbolTrace{z, y, s1, s2};
    reinject(z);
    return static_cast<Byte>(y);
}

Byte StreamCipher::decrypt(Byte symbol) {
    const unsigned m = cfg_.symbol_modulus;
    if (symbol >= m) {
        throw DomainError("ciphertext symbol " + std::to_string(symbol) + " at index " +
                          std::to_string(position_) + " is outside [0, " + std::to_string(m) + ")");
    }
    const unsigned q1 = quantize(advance(cfg_.n1), cfg_);
    const unsigned q2 = quantize(advance(cfg_.n2), cfg_);
    const unsigned z = (symbol + m - q2) % m;
    const unsigned plain = (z + m - q1) % m;
    reinject(z);
    return static_cast<Byte>(plain);
}

EncryptResult encrypt(std::span<const Byte> plaintext, const Key& key, const CipherConfig& cfg) {
    StreamCipher cipher(key, cfg);
    EncryptResult out;
    out.ciphertext.reserve(plaintext.size());
    out.trace.resize(plaintext.size());
    for (std::size_t i = 0; i < plaintext.size(); ++i) {
        out.ciphertext.push_back(cipher.encrypt(plaintext[i], &out.trace[i]));
    }
    return out;
}

CipherText encrypt_symbols(std::span<const Byte> plaintext, const Key& key,
                           const CipherConfig& cfg) {
    StreamCipher cipher(key, cfg);
    CipherText out;
    out.reserve(plaintext.size());
    for (Byte b : plaintext) out.push_back(cipher.encrypt(b));
    return out;
}

PlainText decrypt(std::span<const Byte> ciphertext, const Key& key, const CipherConfig& cfg) {
    StreamCipher cipher(key, cfg);
    PlainText out;
    out.reserve(ciphertext.size());
    for (Byte c : ciphertext) out.push_back(cipher.decrypt(c));
    return out;
}

}  // namespace chaoscrypt
