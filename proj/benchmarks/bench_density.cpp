#include <benchmark/benchmark.h>

#include "ringdens/density.hpp"

using namespace ringdens;

static void BM_CoefficientTable(benchmark::State& state) {
    auto q = profile::make_rational_profile();
    Rational tol(1, state.range(0));
    for (auto _ : state) {
        auto table = density::coefficient_table(q, 2, 10, tol);
        benchmark::DoNotOptimize(table.N);
    }
}
BENCHMARK(BM_CoefficientTable)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_CoefficientTableQuadratic(benchmark::State& state) {
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    Rational tol(1, state.range(0));
    for (auto _ : state) {
        auto table = density::coefficient_table(k7, 2, 10, tol);
        benchmark::DoNotOptimize(table.N);
    }
}
BENCHMARK(BM_CoefficientTableQuadratic)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Moment(benchmark::State& state) {
    auto q = profile::make_rational_profile();
    int s = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto mom = density::moment(q, 2, s, Rational(1, 1000));
        benchmark::DoNotOptimize(mom.series.lo);
    }
}
BENCHMARK(BM_Moment)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ExactDp(benchmark::State& state) {
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    for (auto _ : state) {
        auto dp = density::exact_dp(k7, 2, 12, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(dp.back());
    }
}
BENCHMARK(BM_ExactDp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
