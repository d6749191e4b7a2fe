#include <benchmark/benchmark.h>

#include "ringdens/factorstats.hpp"
#include "ringdens/modpoly.hpp"

using namespace ringdens;

static void BM_FactorDistinct(benchmark::State& state) {
    std::uint64_t p = 1009;
    modp::Poly f{3, 1, 4, 1, 5, 9, 2, 6, 1};  // fixed degree-8 input
    for (auto _ : state) {
        auto comps = modp::factor_distinct(f, p);
        benchmark::DoNotOptimize(comps.size());
    }
}
BENCHMARK(BM_FactorDistinct);

static void BM_FactorCensus(benchmark::State& state) {
    std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto census = factorstats::exact_factor_census(3, p);
        benchmark::DoNotOptimize(census.total);
    }
}
BENCHMARK(BM_FactorCensus)->Arg(31)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_EmpiricalSplitting(benchmark::State& state) {
    for (auto _ : state) {
        auto sample = factorstats::empirical_splitting(
            2, 11, 100, static_cast<std::uint64_t>(state.range(0)), 99);
        benchmark::DoNotOptimize(sample.usable);
    }
}
BENCHMARK(BM_EmpiricalSplitting)->Arg(10000)->Unit(benchmark::kMillisecond);
