#include <benchmark/benchmark.h>

#include "ringdens/sampler.hpp"

using namespace ringdens;
using namespace ringdens::sampler;

static void BM_ExhaustiveEnumeration(benchmark::State& state) {
    EnumSpec spec;
    spec.degree = 2;
    spec.height = state.range(0);
    std::uint64_t visited = 0;
    for (auto _ : state) {
        visited = 0;
        enumerate_representatives(spec, [&](const polyint::NormalizedRep&) { ++visited; });
        benchmark::DoNotOptimize(visited);
    }
    state.counters["reps"] = static_cast<double>(visited);
}
BENCHMARK(BM_ExhaustiveEnumeration)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloSampling(benchmark::State& state) {
    EnumSpec spec;
    spec.degree = 2;
    spec.height = 100000;
    spec.mode = Mode::montecarlo;
    spec.sample_count = static_cast<std::uint64_t>(state.range(0));
    spec.seed = 17;
    for (auto _ : state) {
        std::uint64_t accepted = 0;
        mc_sample(spec, [&](const polyint::NormalizedRep&) { ++accepted; });
        benchmark::DoNotOptimize(accepted);
    }
}
BENCHMARK(BM_MonteCarloSampling)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_AccumulateWithProfiles(benchmark::State& state) {
    EnumSpec spec;
    spec.degree = 2;
    spec.height = state.range(0);
    std::vector<profile::SplittingProfile> profs = {profile::make_rational_profile(),
                                                    profile::make_quadratic_profile(Integer(-7))};
    for (auto _ : state) {
        auto acc = accumulate(spec, profs, {Integer(-7)}, 4, 4);
        benchmark::DoNotOptimize(acc.total_weight);
    }
}
BENCHMARK(BM_AccumulateWithProfiles)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_CountCoprimeTuples(benchmark::State& state) {
    for (auto _ : state) {
        auto res = count_coprime_tuples(2, state.range(0));
        benchmark::DoNotOptimize(res.count);
    }
}
BENCHMARK(BM_CountCoprimeTuples)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
