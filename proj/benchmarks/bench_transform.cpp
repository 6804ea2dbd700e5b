#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <qgc/quasigroup.hpp>
#include <qgc/stats.hpp>
#include <qgc/transform.hpp>

namespace {

qgc::SymbolString random_string(std::uint32_t order, std::size_t length,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<qgc::Symbol> symbols(length);
    for (qgc::Symbol& s : symbols) s = static_cast<qgc::Symbol>(rng() % order);
    return qgc::SymbolString::unchecked(qgc::Alphabet(order), std::move(symbols));
}

void BM_ETransform(benchmark::State& state) {
    const std::uint32_t order = static_cast<std::uint32_t>(state.range(0));
    const qgc::OperationTable table = qgc::random_quasigroup(order, 1);
    const qgc::SymbolString msg = random_string(order, 1 << 20, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgc::e_transform(table, 0, msg));
    }
    state.SetItemsProcessed(state.iterations() * msg.size());
}
BENCHMARK(BM_ETransform)->Arg(4)->Arg(256);

void BM_PEEncrypt(benchmark::State& state) {
    const std::uint32_t order = static_cast<std::uint32_t>(state.range(0));
    const int rounds = static_cast<int>(state.range(1));
    const qgc::PEKey key(
        qgc::random_quasigroup(order, 1),
        std::vector<qgc::RoundParams>(rounds, qgc::RoundParams{0, 3}));
    const qgc::SymbolString msg = random_string(order, 1 << 20, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgc::pe_encrypt(key, msg));
    }
    state.SetItemsProcessed(state.iterations() * msg.size() * rounds);
}
BENCHMARK(BM_PEEncrypt)->Args({4, 1})->Args({4, 3})->Args({16, 3})->Args({256, 3});

void BM_PEDecrypt(benchmark::State& state) {
    const std::uint32_t order = static_cast<std::uint32_t>(state.range(0));
    const qgc::PEKey key(qgc::random_quasigroup(order, 1),
                         {{qgc::RoundParams{0, 3}, qgc::RoundParams{1, 7},
                           qgc::RoundParams{2, 5}}});
    const qgc::SymbolString cipher =
        qgc::pe_encrypt(key, random_string(order, 1 << 20, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgc::pe_decrypt(key, cipher));
    }
    state.SetItemsProcessed(state.iterations() * cipher.size() * 3);
}
BENCHMARK(BM_PEDecrypt)->Arg(4)->Arg(256);

void BM_CountNGrams(benchmark::State& state) {
    const std::uint32_t m = static_cast<std::uint32_t>(state.range(0));
    const qgc::SymbolString msg = random_string(4, 1 << 20, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgc::count_ngrams(msg, m, true));
    }
    state.SetItemsProcessed(state.iterations() * msg.size());
}
BENCHMARK(BM_CountNGrams)->Arg(1)->Arg(4);

void BM_ParastropheSet(benchmark::State& state) {
    const std::uint32_t order = static_cast<std::uint32_t>(state.range(0));
    const qgc::OperationTable table = qgc::random_quasigroup(order, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgc::ParastropheSet{table});
    }
}
BENCHMARK(BM_ParastropheSet)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
