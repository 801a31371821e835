#include "chaoscrypt/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace chaoscrypt {

namespace {

struct GridMatches {
    std::vector<std::size_t> flat;  // grid order
    std::size_t diverged = 0;
};

/// Flat indices of the grid keys whose first |input| symbols equal `target`.
GridMatches scan_grid(const KeyDomain& domain, const CipherConfig& cfg,
                      std::span<const Byte> input, std::span<const Byte> target,
                      const ScanOptions& options) {
    const std::size_t total = domain.size();
    const std::size_t nb = domain.b_count();
    std::vector<double> a_axis(domain.a_count());
    std::vector<double> b_axis(nb);
    for (std::size_t i = 0; i < a_axis.size(); ++i) a_axis[i] = domain.a_at(i);
    for (std::size_t j = 0; j < nb; ++j) b_axis[j] = domain.b_at(j);

    const ChunkedFor loop(total);
    std::vector<std::vector<std::size_t>> per_chunk(loop.chunk_count());
    std::vector<std::size_t> diverged_per_chunk(loop.chunk_count(), 0);

    loop.run(
        resolve_thread_count(options.threads),
        [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            auto& hits = per_chunk[chunk];
            for (std::size_t flat = begin; flat < end; ++flat) {
                const Key key{domain.kind,
                              MapParams{a_axis[flat / nb], b_axis[flat % nb], domain.n_modulus}};
                StreamCipher cipher(key, cfg);
                bool equal = true;
                try {
                    for (std::size_t i = 0; i < input.size() && equal; ++i) {
                        equal = cipher.encrypt(input[i]) == target[i];
                    }
                } catch (const DivergenceError&) {
                    ++diverged_per_chunk[chunk];
                    equal = false;
                }
                if (equal) hits.push_back(flat);
            }
        },
        options.progress);

    GridMatches out;
    for (std::size_t c = 0; c < per_chunk.size(); ++c) {
        out.flat.insert(out.flat.end(), per_chunk[c].begin(), per_chunk[c].end());
        out.diverged += diverged_per_chunk[c];
    }
    return out;
}

std::vector<Key> keys_at(const KeyDomain& domain, const std::vector<std::size_t>& flat) {
    std::vector<Key> keys;
    keys.reserve(flat.size());
    for (std::size_t f : flat) keys.push_back(domain.key_at(f));
    return keys;
}

void require_nonempty(std::span<const Byte> plaintext, const char* what) {
    if (plaintext.empty()) throw DomainError(std::string(what) + ": plaintext must not be empty");
}

}  // namespace

double bit_difference_pct(std::span<const Byte> lhs, std::span<const Byte> rhs) {
    if (lhs.size() != rhs.size()) throw DomainError("bit_difference_pct: length mismatch");
    if (lhs.empty()) throw DomainError("bit_difference_pct: empty input");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        differing += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(lhs[i] ^ rhs[i])));
    }
    return 100.0 * static_cast<double>(differing) / (8.0 * static_cast<double>(lhs.size()));
}

double plaintext_sensitivity(std::span<const Byte> plaintext, const Key& key,
                             const CipherConfig& cfg, std::size_t flip_bit) {
    require_nonempty(plaintext, "plaintext_sensitivity");
    if (flip_bit >= 8 * plaintext.size()) {
        throw DomainError("plaintext_sensitivity: bit " + std::to_string(flip_bit) +
                          " is outside a " + std::to_string(plaintext.size()) + "-byte plaintext");
    }
    PlainText flipped(plaintext.begin(), plaintext.end());
    flipped[flip_bit / 8] ^= static_cast<Byte>(1u << (flip_bit % 8));
    return bit_difference_pct(encrypt_symbols(plaintext, key, cfg),
                              encrypt_symbols(flipped, key, cfg));
}

std::size_t default_flip_bit(std::size_t plaintext_len) {
    if (plaintext_len == 0) throw DomainError("default_flip_bit: plaintext must not be empty");
    return 8 * (plaintext_len - 1);
}

Key perturb(const Key& key, const KeyPerturbation& how) {
    Key out = key;
    if (const auto* inc = std::get_if<IncrementPerturbation>(&how)) {
        out.params.a += inc->delta;
    } else {
        const auto& flip = std::get<BitFlipPerturbation>(how);
        if (flip.component < 0 || flip.component > 1 || flip.bit < 0 || flip.bit > 63) {
            throw DomainError("bit-flip perturbation: component must be 0 or 1, bit in [0, 63]");
        }
        double& target = flip.component == 0 ? out.params.a : out.params.b;
        target = std::bit_cast<double>(std::bit_cast<std::uint64_t>(target) ^
                                       (std::uint64_t{1} << flip.bit));
    }
    if (!std::isfinite(out.params.a) || !std::isfinite(out.params.b)) {
        throw DomainError("perturbed key is not finite");
    }
    return out;
}

double key_sensitivity(std::span<const Byte> plaintext, const Key& key, const CipherConfig& cfg,
                       const KeyPerturbation& how) {
    require_nonempty(plaintext, "key_sensitivity");
    return bit_difference_pct(encrypt_symbols(plaintext, key, cfg),
                              encrypt_symbols(plaintext, perturb(key, how), cfg));
}

std::string_view to_string(Identifiability v) noexcept {
    return v == Identifiability::Identifiable ? "I" : "NI";
}

IdentifiabilityResult identifiability_scan(std::span<const Byte> plaintext, const Key& true_key,
                                           const KeyDomain& domain, const CipherConfig& cfg,
                                           std::size_t iteration_value,
                                           std::optional<std::size_t> compare_len,
                                           const ScanOptions& options) {
    require_nonempty(plaintext, "identifiability_scan");
    domain.validate();
    if (iteration_value < 1) throw DomainError("identifiability_scan: iteration value must be >= 1");
    if (true_key.kind != domain.kind) {
        throw DomainError("identifiability_scan: key and domain use different maps");
    }
    if (!domain.contains(true_key)) {
        throw DomainError("identifiability_scan: true key lies outside the domain");
    }
    const std::size_t len = compare_len.value_or(std::min(plaintext.size(), kDefaultCompareLen));
    if (len < 1 || len > plaintext.size()) {
        throw DomainError("identifiability_scan: compare length must be in [1, |plaintext|]");
    }

    CipherConfig scan_cfg = cfg;
    scan_cfg.n1 = iteration_value;
    scan_cfg.n2 = iteration_value;

    const auto input = plaintext.first(len);
    const GridIndex snapped = domain.snap(true_key);
    IdentifiabilityResult result;
    result.reference_key = domain.key_at(snapped);
    result.grid_size = domain.size();

    const CipherText reference = encrypt_symbols(input, result.reference_key, scan_cfg);
    const GridMatches matches = scan_grid(domain, scan_cfg, input, reference, options);
    result.diverged = matches.diverged;
    result.matching_keys = keys_at(domain, matches.flat);

    const std::size_t snapped_flat = snapped.ia * domain.b_count() + snapped.ib;
    result.verdict = matches.flat.size() == 1 && matches.flat.front() == snapped_flat
                         ? Identifiability::Identifiable
                         : Identifiability::NonIdentifiable;
    return result;
}

AttackResult known_plaintext_attack(std::span<const Byte> ciphertext,
                                    std::span<const Byte> known_prefix, const KeyDomain& domain,
                                    const CipherConfig& cfg, const ScanOptions& options) {
    if (known_prefix.empty()) throw DomainError("known_plaintext_attack: known prefix is empty");
    if (known_prefix.size() > ciphertext.size()) {
        throw DomainError("known_plaintext_attack: known prefix is longer than the ciphertext");
    }
    domain.validate();
    cfg.validate();

    const GridMatches matches =
        scan_grid(domain, cfg, known_prefix, ciphertext.first(known_prefix.size()), options);
    AttackResult result;
    result.grid_size = domain.size();
    result.diverged = matches.diverged;
    result.candidates = keys_at(domain, matches.flat);
    if (result.candidates.size() == 1) {
        result.recovered = result.candidates.front();
        try {
            (void)decrypt(ciphertext, *result.recovered, cfg);
            result.robust = false;
        } catch (const DivergenceError&) {
            result.robust = true;
        }
    }
    return result;
}

}  // namespace chaoscrypt
