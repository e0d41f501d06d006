#include <benchmark/benchmark.h>

#include "besov_rough/rough.hpp"
#include "besov_rough/sewing.hpp"

namespace br = besov_rough;

static void BM_Sew(benchmark::State& state) {
    const auto x = br::brownian_path(2, br::UniformGrid(1.0, static_cast<int>(state.range(0))), 4);
    const auto A = br::canonical_lift(x, 2).level(2);
    for (auto _ : state) benchmark::DoNotOptimize(br::sew_integral(A));
}
BENCHMARK(BM_Sew)->DenseRange(8, 14, 2);

static void BM_SuccessiveDifference(benchmark::State& state) {
    const auto x = br::brownian_path(1, br::UniformGrid(1.0, 12), 5);
    const auto A = br::delta(x);
    for (auto _ : state) benchmark::DoNotOptimize(br::successive_difference(A, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SuccessiveDifference)->DenseRange(2, 10, 4);
