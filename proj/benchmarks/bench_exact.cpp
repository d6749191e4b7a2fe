#include <benchmark/benchmark.h>

#include "ringdens/exact.hpp"
#include "ringdens/primes.hpp"

using namespace ringdens;

static void BM_LocalFactors(benchmark::State& state) {
    auto primes = shared_sieve().primes_below(10000);
    size_t i = 0;
    for (auto _ : state) {
        auto lf = exact::local_factors(primes[i % primes.size()], 2);
        benchmark::DoNotOptimize(lf.beta);
        ++i;
    }
}
BENCHMARK(BM_LocalFactors);

static void BM_ZetaRatio(benchmark::State& state) {
    Rational tol(1, state.range(0));
    for (auto _ : state) {
        auto iv = exact::zeta_ratio(2, tol);
        benchmark::DoNotOptimize(iv.lo);
    }
}
BENCHMARK(BM_ZetaRatio)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ZetaSeries(benchmark::State& state) {
    Rational tol(1, state.range(0));
    for (auto _ : state) {
        auto iv = exact::zeta_interval(2, tol);
        benchmark::DoNotOptimize(iv.lo);
    }
}
BENCHMARK(BM_ZetaSeries)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_SievePrimes(benchmark::State& state) {
    for (auto _ : state) {
        PrimeSieve sieve;
        benchmark::DoNotOptimize(sieve.primes_below(static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_SievePrimes)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
