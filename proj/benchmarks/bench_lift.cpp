#include <benchmark/benchmark.h>

#include "besov_rough/rough.hpp"

namespace br = besov_rough;

static void BM_BrownianLift(benchmark::State& state) {
    const br::UniformGrid g(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(br::brownian_lift(2, g, 6));
}
BENCHMARK(BM_BrownianLift)->DenseRange(8, 12, 2);

static void BM_LyonsExtend(benchmark::State& state) {
    const auto X = br::brownian_lift(2, br::UniformGrid(1.0, static_cast<int>(state.range(0))), 7);
    for (auto _ : state) benchmark::DoNotOptimize(br::lyons_extend(X, 3));
}
BENCHMARK(BM_LyonsExtend)->DenseRange(6, 10, 2);

static void BM_FbmPath(benchmark::State& state) {
    const br::UniformGrid g(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(br::fbm_path(0.4, g, 8));
}
BENCHMARK(BM_FbmPath)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
