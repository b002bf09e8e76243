#include <benchmark/benchmark.h>

#include "splab/shifted_stats.hpp"
#include "splab/sieve.hpp"

namespace {

void BM_EnumeratePrimes(benchmark::State& state) {
    const std::uint64_t limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto primes = splab::enumerate_primes(splab::SieveConfig(limit));
        benchmark::DoNotOptimize(primes.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_EnumeratePrimes)->Arg(1 << 20)->Arg(1 << 24);

void BM_ShiftedFactorScan(benchmark::State& state) {
    const std::uint64_t limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        std::uint64_t sink = 0;
        splab::for_each_shifted_block(splab::SieveConfig(limit),
                                      [&](const splab::SieveBlock& b) {
                                          for (const auto& r : b.records)
                                              sink += r.largest;
                                          return true;
                                      });
        benchmark::DoNotOptimize(sink);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_ShiftedFactorScan)->Arg(1 << 20)->Arg(1 << 22);

void BM_MangoldtProgressionSum(benchmark::State& state) {
    const std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto rec = splab::mangoldt_progression_sum(x, 1.0, static_cast<double>(x));
        benchmark::DoNotOptimize(rec.value);
    }
}
BENCHMARK(BM_MangoldtProgressionSum)->Arg(1 << 20);

void BM_BlockSizeSweep(benchmark::State& state) {
    const std::uint64_t bs = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto n = splab::count_primes(splab::SieveConfig(1 << 22, bs));
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_BlockSizeSweep)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 22);

} // namespace

BENCHMARK_MAIN();
