#include "chaoscrypt/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace chaoscrypt {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

constexpr std::size_t kChunk = 1 << 16;
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

/// Incremental hex decoder shared by `from_hex` and `decrypt_stream`.
class HexDecoder {
public:
    template <typename Sink>
    void feed(std::string_view chunk, Sink&& sink) {
        for (char c : chunk) {
            const std::size_t at = offset_++;
            if (tail_ == Tail::Done) fail("unexpected data after trailing newline", at);
            if (tail_ == Tail::SawCr) {
                if (c != '\n') fail("carriage return not followed by newline", at);
                tail_ = Tail::Done;
                continue;
            }
            if (c == '\n' || c == '\r') {
                if (high_ >= 0) fail("odd number of hex digits", at);
                tail_ = c == '\n' ? Tail::Done : Tail::SawCr;
                continue;
            }
            const int v = hex_value(c);
            if (v < 0) fail("invalid hex character", at);
            if (high_ < 0) {
                high_ = v;
            } else {
                sink(static_cast<Byte>(high_ * 16 + v));
                high_ = -1;
            }
        }
    }

    void finish() const {
        if (high_ >= 0) fail("odd number of hex digits", offset_);
        if (tail_ == Tail::SawCr) fail("carriage return not followed by newline", offset_);
    }

private:
    enum class Tail { None, SawCr, Done };

    [[noreturn]] static void fail(const char* what, std::size_t at) {
        throw FormatError(std::string("malformed hex: ") + what + " at offset " + std::to_string(at));
    }

    int high_ = -1;
    Tail tail_ = Tail::None;
    std::size_t offset_ = 0;
};

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

double number_field(const json& obj, const char* name, const char* what) {
    const auto& v = obj.at(name);
    if (!v.is_number()) throw FormatError(std::string(what) + ": field '" + name + "' must be a number");
    return v.get<double>();
}

std::size_t count_field(const json& obj, const char* name, const char* what) {
    const auto& v = obj.at(name);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw FormatError(std::string(what) + ": field '" + name + "' must be an integer >= 1");
    }
    return v.get<std::size_t>();
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const char* what) {
    for (const auto& [name, _] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || name == a;
        if (!known) throw FormatError(std::string(what) + ": unknown field '" + name + "'");
    }
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

/// Runs `body(in, out)`; removes the half-written output when it throws.
template <typename Body>
void transform_file(const std::filesystem::path& in_path, const std::filesystem::path& out_path,
                    std::ios::openmode in_mode, std::ios::openmode out_mode, Body body) {
    auto in = open_in(in_path, in_mode);
    try {
        auto out = open_out(out_path, out_mode);
        body(in, out);
        out.flush();
        if (!out) throw IoError("write to '" + out_path.string() + "' failed");
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(out_path, ignored);
        throw;
    }
}

}  // namespace

std::string to_hex(std::span<const Byte> symbols) {
    std::string out;
    out.resize(symbols.size() * 2);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out[2 * i] = kHexDigits[symbols[i] >> 4];
        out[2 * i + 1] = kHexDigits[symbols[i] & 0x0f];
    }
    return out;
}

CipherText from_hex(std::string_view text) {
    CipherText out;
    out.reserve(text.size() / 2);
    HexDecoder decoder;
    decoder.feed(text, [&](Byte b) { out.push_back(b); });
    decoder.finish();
    return out;
}

std::string serialize_key(const Key& key) {
    ordered_json j;
    j["kind"] = std::string(to_string(key.kind));
    j["a"] = key.params.a;
    j["b"] = key.params.b;
    j["n_modulus"] = key.params.n_modulus;
    return j.dump();
}

Key parse_key(std::string_view json_text) {
    const json j = parse_json(json_text, "key");
    if (!j.is_object()) throw FormatError("key: expected a JSON object");
    reject_unknown(j, {"kind", "a", "b", "n_modulus"}, "key");
    try {
        if (!j.at("kind").is_string()) throw FormatError("key: field 'kind' must be a string");
        Key key;
        try {
            key.kind = parse_map_kind(j.at("kind").get<std::string>());
        } catch (const DomainError& e) {
            throw FormatError(std::string("key: ") + e.what());
        }
        key.params.a = number_field(j, "a", "key");
        key.params.b = number_field(j, "b", "key");
        if (j.contains("n_modulus")) key.params.n_modulus = number_field(j, "n_modulus", "key");
        try {
            validate(key.params);
        } catch (const DomainError& e) {
            throw FormatError(std::string("key: ") + e.what());
        }
        return key;
    } catch (const json::out_of_range& e) {
        throw FormatError(std::string("key: missing field: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read from '" + path.string() + "' failed");
    return std::move(buf).str();
}

Key load_key_file(const std::filesystem::path& path) { return parse_key(read_text_file(path)); }

void save_key_file(const std::filesystem::path& path, const Key& key) {
    auto out = open_out(path, std::ios::binary);
    out << serialize_key(key) << '\n';
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string serialize_config(const CipherConfig& cfg) {
    ordered_json j;
    j["n1"] = cfg.n1;
    j["n2"] = cfg.n2;
    j["quant_scale"] = cfg.quant_scale;
    j["reinject_gain"] = cfg.reinject_gain;
    if (cfg.initial_state) {
        j["initial_state"] = {{"x", cfg.initial_state->x}, {"y", cfg.initial_state->y}};
    }
    return j.dump();
}

CipherConfig parse_config(std::string_view json_text) {
    const json j = parse_json(json_text, "config");
    if (!j.is_object()) throw FormatError("config: expected a JSON object");
    reject_unknown(j, {"n1", "n2", "quant_scale", "reinject_gain", "initial_state"}, "config");
    CipherConfig cfg;
    try {
        if (j.contains("n1")) cfg.n1 = count_field(j, "n1", "config");
        if (j.contains("n2")) cfg.n2 = count_field(j, "n2", "config");
        if (j.contains("quant_scale")) {
            cfg.quant_scale = number_field(j, "quant_scale", "config");
            if (!(cfg.quant_scale > 0.0)) throw FormatError("config: quant_scale must be > 0");
        }
        if (j.contains("reinject_gain")) {
            cfg.reinject_gain = number_field(j, "reinject_gain", "config");
        }
        if (j.contains("initial_state")) {
            const auto& s = j.at("initial_state");
            if (!s.is_object()) throw FormatError("config: initial_state must be an object {x, y}");
            reject_unknown(s, {"x", "y"}, "config.initial_state");
            cfg.initial_state = State{number_field(s, "x", "config.initial_state"),
                                      number_field(s, "y", "config.initial_state")};
        }
    } catch (const json::out_of_range& e) {
        throw FormatError(std::string("config: missing field: ") + e.what());
    }
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw FormatError(e.what());
    }
    return cfg;
}

CipherConfig load_config_file(const std::filesystem::path& path) {
    return parse_config(read_text_file(path));
}

void encrypt_stream(std::istream& in, std::ostream& out, const Key& key, const CipherConfig& cfg) {
    StreamCipher cipher(key, cfg);
    std::array<char, kChunk> buf;
    std::string hex;
    hex.reserve(2 * kChunk);
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = static_cast<std::size_t>(in.gcount());
        hex.clear();
        for (std::size_t i = 0; i < got; ++i) {
            const Byte y = cipher.encrypt(static_cast<Byte>(buf[i]));
            hex.push_back(kHexDigits[y >> 4]);
            hex.push_back(kHexDigits[y & 0x0f]);
        }
        out.write(hex.data(), static_cast<std::streamsize>(hex.size()));
    }
    if (in.bad()) throw IoError("read failed while encrypting");
    out << '\n';
}

void decrypt_stream(std::istream& in, std::ostream& out, const Key& key, const CipherConfig& cfg) {
    StreamCipher cipher(key, cfg);
    HexDecoder decoder;
    std::array<char, kChunk> buf;
    std::string plain;
    plain.reserve(kChunk / 2 + 1);
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = static_cast<std::size_t>(in.gcount());
        plain.clear();
        decoder.feed(std::string_view(buf.data(), got),
                     [&](Byte c) { plain.push_back(static_cast<char>(cipher.decrypt(c))); });
        out.write(plain.data(), static_cast<std::streamsize>(plain.size()));
    }
    if (in.bad()) throw IoError("read failed while decrypting");
    decoder.finish();
}

void encrypt_file(const std::filesystem::path& in, const std::filesystem::path& out,
                  const Key& key, const CipherConfig& cfg) {
    transform_file(in, out, std::ios::binary, std::ios::binary,
                   [&](std::istream& i, std::ostream& o) { encrypt_stream(i, o, key, cfg); });
}

void decrypt_file(const std::filesystem::path& in, const std::filesystem::path& out,
                  const Key& key, const CipherConfig& cfg) {
    transform_file(in, out, std::ios::binary, std::ios::binary,
                   [&](std::istream& i, std::ostream& o) { decrypt_stream(i, o, key, cfg); });
}

}  // namespace chaoscrypt
