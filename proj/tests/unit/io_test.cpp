#include <gtest/gtest.h>

#include <sys/resource.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "chaoscrypt/errors.hpp"
#include "chaoscrypt/io.hpp"

using namespace chaoscrypt;
namespace fs = std::filesystem;

namespace {

const Key kKey{MapKind::ArnoldCat, {-2.5, 1.0, 1.0}};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("chaoscrypt_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const char* name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, std::string_view s) {
    std::ofstream(p, std::ios::binary).write(s.data(), static_cast<std::streamsize>(s.size()));
}

long max_rss_kib() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return u.ru_maxrss;
}

}  // namespace

TEST(Hex, Encode) {
    EXPECT_EQ(to_hex(CipherText{}), "");
    EXPECT_EQ(to_hex(CipherText{0x00, 0x0f, 0xa0, 0xff}), "000fa0ff");
}

TEST(Hex, DecodeAcceptsOneTrailingNewline) {
    EXPECT_EQ(from_hex("00ff"), (CipherText{0x00, 0xff}));
    EXPECT_EQ(from_hex("00ff\n"), (CipherText{0x00, 0xff}));
    EXPECT_EQ(from_hex("00ff\r\n"), (CipherText{0x00, 0xff}));
    EXPECT_EQ(from_hex(""), CipherText{});
}

TEST(Hex, DecodeRejectsMalformed) {
    for (const char* bad : {"0", "abc", "zz", "00FF", "00 ff", "00ff\n\n", "00ff\r", "\n00",
                            "0g", "00ff\nab"}) {
        EXPECT_THROW(from_hex(bad), FormatError) << '"' << bad << '"';
    }
}

TEST(Hex, RoundTripProperty) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(0, 255);
    for (int n = 0; n < 300; ++n) {
        CipherText c(static_cast<std::size_t>(n));
        for (auto& b : c) b = static_cast<Byte>(d(rng));
        ASSERT_EQ(from_hex(to_hex(c)), c);
    }
}

TEST(KeyJson, RoundTripsFullPrecision) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-10, 10);
    for (int i = 0; i < 200; ++i) {
        const Key k{i % 2 ? MapKind::Duffing : MapKind::ArnoldCat, {d(rng), d(rng), 1.0 + i}};
        ASSERT_EQ(parse_key(serialize_key(k)), k);
    }
}

TEST(KeyJson, ModulusIsOptional) {
    const Key k = parse_key(R"({"kind":"duffing","a":2.75,"b":0.2})");
    EXPECT_EQ(k.kind, MapKind::Duffing);
    EXPECT_EQ(k.params, (MapParams{2.75, 0.2, 1.0}));
}

TEST(KeyJson, RejectsMalformed) {
    for (const char* bad : {"", "{", "[]", R"({"kind":"arnold","a":1})",
                            R"({"kind":"henon","a":1,"b":2})",
                            R"({"kind":"arnold","a":"1","b":2})",
                            R"({"kind":"arnold","a":1,"b":2,"n_modulus":0})",
                            R"({"kind":"arnold","a":1,"b":2,"extra":3})"}) {
        EXPECT_THROW(parse_key(bad), FormatError) << bad;
    }
}

TEST(ConfigJson, DefaultsAndOverrides) {
    EXPECT_EQ(parse_config("{}"), CipherConfig{});
    const CipherConfig c = parse_config(
        R"({"n1":2,"n2":5,"quant_scale":1000,"reinject_gain":0.5,"initial_state":{"x":0.1,"y":-0.2}})");
    EXPECT_EQ(c.n1, 2u);
    EXPECT_EQ(c.n2, 5u);
    EXPECT_EQ(c.quant_scale, 1000.0);
    EXPECT_EQ(c.reinject_gain, 0.5);
    ASSERT_TRUE(c.initial_state.has_value());
    EXPECT_EQ(*c.initial_state, (State{0.1, -0.2}));
    EXPECT_EQ(parse_config(serialize_config(c)), c);
    EXPECT_EQ(parse_config(serialize_config(CipherConfig{})), CipherConfig{});
}

TEST(ConfigJson, RejectsMalformed) {
    for (const char* bad : {R"({"n1":0})", R"({"n2":-1})", R"({"quant_scale":0})",
                            R"({"initial_state":{"x":1}})", R"({"rounds":3})", "3"}) {
        EXPECT_THROW(parse_config(bad), FormatError) << bad;
    }
}

TEST(Files, MissingFileIsIoError) {
    EXPECT_THROW(read_text_file("/nonexistent/chaoscrypt/file"), IoError);
    EXPECT_THROW(load_key_file("/nonexistent/chaoscrypt/key.json"), IoError);
}

TEST(Files, KeyFileRoundTrip) {
    TempDir dir;
    save_key_file(dir / "k.json", kKey);
    EXPECT_EQ(load_key_file(dir / "k.json"), kKey);
}

TEST(Files, EncryptDecryptEmptyFile) {
    TempDir dir;
    write(dir / "p", "");
    encrypt_file(dir / "p", dir / "c", kKey, {});
    EXPECT_EQ(slurp(dir / "c"), "\n");
    decrypt_file(dir / "c", dir / "r", kKey, {});
    EXPECT_EQ(slurp(dir / "r"), "");
}

TEST(Files, EncryptDecryptBinaryFile) {
    TempDir dir;
    std::mt19937_64 rng(4);
    std::string data(200000, '\0');
    for (auto& ch : data) ch = static_cast<char>(rng() & 0xff);
    write(dir / "p", data);
    encrypt_file(dir / "p", dir / "c", kKey, {});
    EXPECT_EQ(slurp(dir / "c").size(), 2 * data.size() + 1);
    decrypt_file(dir / "c", dir / "r", kKey, {});
    EXPECT_EQ(slurp(dir / "r"), data);
}

TEST(Files, StreamMatchesWholeBuffer) {
    const std::string text(70000, 'x');
    std::istringstream in(text);
    std::ostringstream out;
    encrypt_stream(in, out, kKey, {});
    const PlainText p(text.begin(), text.end());
    EXPECT_EQ(out.str(), to_hex(encrypt_symbols(p, kKey, {})) + "\n");
}

TEST(Files, MalformedCiphertextLeavesNoOutput) {
    TempDir dir;
    write(dir / "c", "00ff0g\n");
    EXPECT_THROW(decrypt_file(dir / "c", dir / "r", kKey, {}), FormatError);
    EXPECT_FALSE(fs::exists(dir / "r"));
}

TEST(Files, LargeFileStreamsInBoundedMemory) {
    TempDir dir;
    constexpr std::size_t kSize = 8u << 20;
    {
        std::ofstream out(dir / "p", std::ios::binary);
        std::mt19937_64 rng(6);
        std::string block(1 << 16, '\0');
        for (std::size_t done = 0; done < kSize; done += block.size()) {
            for (auto& ch : block) ch = static_cast<char>(rng() & 0xff);
            out.write(block.data(), static_cast<std::streamsize>(block.size()));
        }
    }
    const long before = max_rss_kib();
    encrypt_file(dir / "p", dir / "c", kKey, {});
    decrypt_file(dir / "c", dir / "r", kKey, {});
    const long grown = max_rss_kib() - before;
    // a whole-file implementation would need at least 24 MiB here
    EXPECT_LT(grown, 8 * 1024) << "peak RSS grew by " << grown << " KiB";
    EXPECT_EQ(fs::file_size(dir / "r"), kSize);
    std::ifstream a(dir / "p", std::ios::binary), b(dir / "r", std::ios::binary);
    EXPECT_TRUE(std::equal(std::istreambuf_iterator<char>(a), {},
                           std::istreambuf_iterator<char>(b)));
}
