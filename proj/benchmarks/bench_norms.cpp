#include <benchmark/benchmark.h>

#include "besov_rough/norms.hpp"
#include "besov_rough/rough.hpp"

namespace br = besov_rough;

static void BM_BesovSeminorm(benchmark::State& state) {
    const auto x = br::brownian_path(1, br::UniformGrid(1.0, static_cast<int>(state.range(0))), 1);
    const br::BesovParams P{0.4, 4.0, 8.0};
    for (auto _ : state) benchmark::DoNotOptimize(br::besov_seminorm(x, P));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BesovSeminorm)->DenseRange(8, 16, 2);

static void BM_PVariation(benchmark::State& state) {
    const auto x = br::brownian_path(1, br::UniformGrid(1.0, static_cast<int>(state.range(0))), 2);
    for (auto _ : state) benchmark::DoNotOptimize(br::pvariation(x, 2.5));
}
BENCHMARK(BM_PVariation)->DenseRange(6, 10, 2);

static void BM_TwoParamNorm(benchmark::State& state) {
    const auto x = br::brownian_path(2, br::UniformGrid(1.0, static_cast<int>(state.range(0))), 3);
    const auto X = br::canonical_lift(x, 2);
    for (auto _ : state) benchmark::DoNotOptimize(br::two_param_norm(X.level(2), 0.8, 4.0, 8.0));
}
BENCHMARK(BM_TwoParamNorm)->DenseRange(8, 12, 2);
