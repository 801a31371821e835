#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "chaoscrypt/cipher.hpp"
#include "chaoscrypt/key_domain.hpp"
#include "chaoscrypt/parallel.hpp"

namespace chaoscrypt {

/// Percentage of differing bits between two equal-length symbol strings.
double bit_difference_pct(std::span<const Byte> lhs, std::span<const Byte> rhs);

/// Bit `flip_bit` addresses byte flip_bit / 8, bit (flip_bit % 8) counted
/// from the least significant end.
///
/// 100 * Hamming(E(p), E(p with that bit flipped)) / (8 |p|).
double plaintext_sensitivity(std::span<const Byte> plaintext, const Key& key,
                             const CipherConfig& cfg, std::size_t flip_bit);

/// Least significant bit of the final byte.
std::size_t default_flip_bit(std::size_t plaintext_len);

/// Adds `delta` to parameter a.
struct IncrementPerturbation {
    double delta = 1e-4;
};

/// Flips one bit of the IEEE-754 binary64 encoding of a (component 0) or b (component 1).
struct BitFlipPerturbation {
    int component = 0;
    int bit = 0;
};

using KeyPerturbation = std::variant<IncrementPerturbation, BitFlipPerturbation>;

Key perturb(const Key& key, const KeyPerturbation& how);

/// 100 * Hamming(E(p, key), E(p, perturb(key))) / (8 |p|).
double key_sensitivity(std::span<const Byte> plaintext, const Key& key, const CipherConfig& cfg,
                       const KeyPerturbation& how = IncrementPerturbation{});

struct ScanOptions {
    unsigned threads = 0;  ///< 0 = resolve_thread_count()
    ProgressFn progress;
};

enum class Identifiability { Identifiable, NonIdentifiable };

/// "I" / "NI"
std::string_view to_string(Identifiability v) noexcept;

struct IdentifiabilityResult {
    Identifiability verdict = Identifiability::NonIdentifiable;
    Key reference_key;               ///< true key snapped onto the grid
    std::vector<Key> matching_keys;  ///< in grid order
    std::size_t grid_size = 0;
    std::size_t diverged = 0;  ///< grid keys that diverged (never matching)
};

/// Compared prefix length used when none is given: min(|p|, 8).
inline constexpr std::size_t kDefaultCompareLen = 8;

/// Output-equality scan. Every grid key is run with n1 = n2 = iteration_value
/// over the first `compare_len` plaintext bytes; a key matches when its
/// symbols equal the snapped true key's exactly.
///
/// The verdict is Identifiable iff the snapped true key is the only match.
/// Throws DomainError if the true key lies outside `domain`, and
/// DivergenceError if the snapped true key itself diverges.
IdentifiabilityResult identifiability_scan(std::span<const Byte> plaintext, const Key& true_key,
                                           const KeyDomain& domain, const CipherConfig& cfg,
                                           std::size_t iteration_value,
                                           std::optional<std::size_t> compare_len = std::nullopt,
                                           const ScanOptions& options = {});

struct AttackResult {
    std::vector<Key> candidates;  ///< in grid order
    std::optional<Key> recovered;  ///< set iff exactly one candidate
    /// False only when a unique candidate was isolated and it decrypts the
    /// whole ciphertext without diverging.
    bool robust = true;
    std::size_t grid_size = 0;
    std::size_t diverged = 0;

    /// Whether the attack pinned down exactly `key`.
    bool isolates(const Key& key) const { return recovered && *recovered == key; }
};

/// Known-plaintext key search: candidates are the grid keys whose encryption
/// of `known_prefix` reproduces the leading ciphertext symbols.
AttackResult known_plaintext_attack(std::span<const Byte> ciphertext,
                                    std::span<const Byte> known_prefix, const KeyDomain& domain,
                                    const CipherConfig& cfg, const ScanOptions& options = {});

}  // namespace chaoscrypt
