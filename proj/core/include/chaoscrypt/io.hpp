#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "chaoscrypt/cipher.hpp"

namespace chaoscrypt {

/// Lowercase hex, two digits per symbol, no separators.
std::string to_hex(std::span<const Byte> symbols);

/// Parses lowercase hex. One trailing "\n" or "\r\n" is tolerated;
/// anything else that is not a lowercase hex digit pair is a FormatError.
CipherText from_hex(std::string_view text);

/// Single-line JSON: {"kind":"arnold","a":...,"b":...,"n_modulus":...}
std::string serialize_key(const Key& key);
Key parse_key(std::string_view json_text);
Key load_key_file(const std::filesystem::path& path);
void save_key_file(const std::filesystem::path& path, const Key& key);

/// JSON with optional fields n1, n2, quant_scale, reinject_gain,
/// initial_state {x, y}; absent fields keep their defaults.
std::string serialize_config(const CipherConfig& cfg);
CipherConfig parse_config(std::string_view json_text);
CipherConfig load_config_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Streams bytes from `in`, writes hex ciphertext to `out`.
void encrypt_stream(std::istream& in, std::ostream& out, const Key& key, const CipherConfig& cfg);
/// Streams hex ciphertext from `in`, writes recovered bytes to `out`.
void decrypt_stream(std::istream& in, std::ostream& out, const Key& key, const CipherConfig& cfg);

void encrypt_file(const std::filesystem::path& in, const std::filesystem::path& out,
                  const Key& key, const CipherConfig& cfg);
void decrypt_file(const std::filesystem::path& in, const std::filesystem::path& out,
                  const Key& key, const CipherConfig& cfg);

}  // namespace chaoscrypt
