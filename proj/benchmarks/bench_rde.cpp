#include <benchmark/benchmark.h>

#include "besov_rough/controlled.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/vector_field.hpp"

namespace br = besov_rough;

static void BM_RdeSolve(benchmark::State& state) {
    const auto X = br::brownian_lift(2, br::UniformGrid(1.0, static_cast<int>(state.range(0))), 9,
                                     br::LiftFlavor::stratonovich);
    const auto F = br::builtin_field("rotation", 2, 2);
    br::RdeOptions opts;
    opts.with_report = false;
    for (auto _ : state) benchmark::DoNotOptimize(br::rde_solve(F, X, {1.0, 0.0}, opts));
}
BENCHMARK(BM_RdeSolve)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
