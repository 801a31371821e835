#include <benchmark/benchmark.h>

#include <random>

#include "chaoscrypt/chaoscrypt.hpp"

using namespace chaoscrypt;

namespace {

const Key kArnold{MapKind::ArnoldCat, {-3.5, 0.9, 1.0}};
const Key kDuffing{MapKind::Duffing, {2.75, 0.1, 1.0}};
// the figure key escapes within a few hundred reinjected symbols; this one stays bounded
const Key kDuffingLong{MapKind::Duffing, {2.5, 0.1, 1.0}};

PlainText random_text(std::size_t n) {
    std::mt19937_64 rng(1);
    PlainText p(n);
    for (auto& b : p) b = static_cast<Byte>(rng() & 0xff);
    return p;
}

void BM_ArnoldIterate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            iterate(MapKind::ArnoldCat, {0.5, 0.06}, kArnold.params, static_cast<std::size_t>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ArnoldIterate)->Arg(1000);

void BM_DuffingIterate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            iterate(MapKind::Duffing, {-0.04, 0.2}, kDuffing.params, static_cast<std::size_t>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DuffingIterate)->Arg(1000);

void BM_Encrypt(benchmark::State& state) {
    const PlainText p = random_text(static_cast<std::size_t>(state.range(0)));
    const Key& key = state.range(1) ? kDuffingLong : kArnold;
    for (auto _ : state) benchmark::DoNotOptimize(encrypt_symbols(p, key, {}));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encrypt)->Args({4096, 0})->Args({4096, 1});

void BM_Decrypt(benchmark::State& state) {
    const PlainText p = random_text(4096);
    const CipherText c = encrypt_symbols(p, kArnold, {});
    for (auto _ : state) benchmark::DoNotOptimize(decrypt(c, kArnold, {}));
    state.SetBytesProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_Decrypt);

void BM_IdentifiabilityScan(benchmark::State& state) {
    const KeyDomain d{MapKind::ArnoldCat, 0, 0, 0.005, 0.004, 1e-4, 1.0};
    const Key key{MapKind::ArnoldCat, {0.0034, 0.0013, 1.0}};
    const std::string text = "What is your name?";
    const PlainText p(text.begin(), text.end());
    ScanOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(identifiability_scan(p, key, d, {}, 3, std::nullopt, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.size()));
}
BENCHMARK(BM_IdentifiabilityScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KnownPlaintextAttack(benchmark::State& state) {
    const KeyDomain d{MapKind::ArnoldCat, -3.0, 0.5, -2.0, 1.5, 0.01, 1.0};
    const std::string text = "Children are playing";
    const PlainText p(text.begin(), text.end());
    const CipherText c = encrypt_symbols(p, {MapKind::ArnoldCat, {-2.5, 1.0, 1.0}}, {});
    for (auto _ : state)
        benchmark::DoNotOptimize(known_plaintext_attack(c, std::span<const Byte>(p).first(2), d, {}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.size()));
}
BENCHMARK(BM_KnownPlaintextAttack)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
