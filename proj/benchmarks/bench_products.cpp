#include <benchmark/benchmark.h>

#include "splab/product_sets.hpp"

namespace {

void BM_BruteEnumerate(benchmark::State& state) {
    const std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    splab::EnumOptions opt;
    opt.mode = splab::EnumMode::multiplicity;
    const splab::Rational a = splab::Rational::of(1, 4);
    for (auto _ : state) {
        auto r = splab::brute_enumerate(x, 2, a, opt);
        benchmark::DoNotOptimize(r.count);
    }
}
BENCHMARK(BM_BruteEnumerate)->Arg(100'000)->Arg(1'000'000)->Arg(10'000'000);

void BM_ProgressionEnumerate(benchmark::State& state) {
    const std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    splab::EnumOptions opt;
    opt.mode = splab::EnumMode::multiplicity;
    const splab::Rational a = splab::Rational::of(1, 4);
    for (auto _ : state) {
        auto r = splab::progression_enumerate(x, 2, a, opt);
        benchmark::DoNotOptimize(r.count);
    }
}
BENCHMARK(BM_ProgressionEnumerate)->Arg(100'000)->Arg(1'000'000)->Arg(10'000'000);

void BM_GcdLogSum(benchmark::State& state) {
    const std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto rec = splab::gcd_log_sum(x, 2);
        benchmark::DoNotOptimize(rec.value);
    }
}
BENCHMARK(BM_GcdLogSum)->Arg(10'000)->Arg(100'000);

} // namespace

BENCHMARK_MAIN();
