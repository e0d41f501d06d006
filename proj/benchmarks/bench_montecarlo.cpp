#include <benchmark/benchmark.h>

#include "besov_rough/stochlab.hpp"

namespace br = besov_rough;

static void BM_BmStatistic(benchmark::State& state) {
    br::BmStatisticConfig cfg;
    cfg.ns = {4, 6};
    cfg.level = 10;
    cfg.samples = static_cast<std::size_t>(state.range(0));
    cfg.oracle_samples = 64;
    for (auto _ : state) benchmark::DoNotOptimize(br::bm_besov_statistic(cfg));
}
BENCHMARK(BM_BmStatistic)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Paraproduct(benchmark::State& state) {
    const auto J = static_cast<std::size_t>(state.range(0));
    const auto f = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, J, 1);
    const auto g = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, J, 2);
    for (auto _ : state) benchmark::DoNotOptimize(br::two_param_norm(br::paraproduct_delta(f.g, g), 0.5, 4.0, 8.0));
}
BENCHMARK(BM_Paraproduct)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);
