#include <gtest/gtest.h>

#include <cmath>

#include "besov_rough/errors.hpp"
#include "besov_rough/parallel.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/stats.hpp"
#include "besov_rough/stochlab.hpp"

namespace br = besov_rough;

namespace {

br::DiscreteMartingale constant_martingale(std::size_t J) {
    br::DiscreteMartingale m = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, J, 1);
    for (std::size_t i = 0; i < m.g.size(); ++i) m.g(i) = 0.25;
    return m;
}

}  // namespace

TEST(Martingale, Generators) {
    const auto r = br::DiscreteMartingale::generate(br::MartingaleKind::rademacher, 64, 3);
    for (std::size_t j = 1; j <= 64; ++j) EXPECT_NEAR(std::abs(r.increment(j)), 0.125, 1e-15);
    const auto w = br::DiscreteMartingale::generate(br::MartingaleKind::stopped_walk, 256, 5, 0.25);
    for (std::size_t j = 0; j <= 256; ++j) EXPECT_LE(std::abs(w.g(j)), 0.25 + 1.0 / 16 + 1e-15);
    EXPECT_EQ(br::parse_martingale_kind("random-sign"), br::MartingaleKind::rademacher);
    EXPECT_THROW(br::parse_martingale_kind("levy"), std::invalid_argument);
}

TEST(Paraproduct, TrivialCases) {
    const auto g = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, 32, 9);
    const br::UniformGrid grid = g.g.grid();
    const auto one = br::TwoParamField::from_function(grid, 1, [](std::size_t, std::size_t, double* o) { o[0] = 1.0; });
    const auto P = br::paraproduct(one, g);
    for (std::size_t s = 0; s <= 32; s += 3)
        for (std::size_t t = s; t <= 32; t += 4) EXPECT_NEAR(P.value(s, t), g.g(t) - g.g(s), 1e-14);
    const auto P0 = br::paraproduct(one, constant_martingale(32));
    EXPECT_EQ(P0.value(0, 32), 0.0);
    br::GridPath cst(grid, 1, std::vector<double>(grid.size(), 2.0));
    EXPECT_EQ(br::paraproduct_delta(cst, g).value(3, 30), 0.0);
}

TEST(Paraproduct, DiscreteItoFormula) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, 128, seed);
        for (std::size_t i = 0; i < g.g.size(); ++i) g.g(i) += 0.3;  // g_0 != 0
        const auto P = br::paraproduct_delta(g.g, g);
        double qv = 0.0;
        for (std::size_t j = 1; j <= 128; ++j) qv += g.increment(j) * g.increment(j);
        const double gJ = g.g(128), g0 = g.g(0);
        const double sum = 0.5 * (gJ * gJ - g0 * g0) - 0.5 * qv;  // sum_j g_j dg_{j+1}
        EXPECT_NEAR(P.value(0, 128), sum - g0 * (gJ - g0), 1e-12);
    }
}

TEST(Paraproduct, ClosedFormMatchesRecurrence) {
    const auto f = br::DiscreteMartingale::generate(br::MartingaleKind::rademacher, 32, 2);
    const auto g = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, 32, 3);
    const auto direct = br::paraproduct(br::delta(f.g), g);
    const auto closed = br::paraproduct_delta(f.g, g);
    for (std::size_t s = 0; s <= 32; ++s)
        for (std::size_t t = s; t <= 32; ++t) EXPECT_NEAR(direct.value(s, t), closed.value(s, t), 1e-13);
}

TEST(Paraproduct, CoboundaryStructure) {
    br::Rng rng(17);
    const auto f = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, 64, 4);
    const auto g = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, 64, 5);
    const auto P = br::paraproduct_delta(f.g, g);
    for (int k = 0; k < 50; ++k) {
        std::size_t a = rng.below(65), b = rng.below(65), c = rng.below(65);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        const double d2 = br::delta2(P, a, b, c)[0];
        EXPECT_NEAR(d2, (f.g(b) - f.g(a)) * (g.g(c) - g.g(b)), 1e-13);
    }
}

TEST(SquareFunction, Examples) {
    br::DiscreteMartingale jump = constant_martingale(16);
    for (std::size_t i = 5; i <= 16; ++i) jump.g(i) = 1.25;
    EXPECT_NEAR(br::square_function(jump).value(0, 16), 1.0, 1e-15);

    br::DiscreteMartingale lin = constant_martingale(16);
    for (std::size_t i = 0; i <= 16; ++i) lin.g(i) = 0.1 * static_cast<double>(i);
    EXPECT_NEAR(br::square_function(lin).value(3, 12), 3.0 * 0.1, 1e-14);

    const auto g = br::DiscreteMartingale::generate(br::MartingaleKind::gaussian, 64, 6);
    const auto S = br::square_function(g);
    for (std::size_t u = 0; u <= 64; u += 8)
        EXPECT_NEAR(std::pow(S.value(0, 64), 2), std::pow(S.value(0, u), 2) + std::pow(S.value(u, 64), 2), 1e-13);
}

TEST(YnpStatistic, ZeroPathAndBadLevel) {
    const br::UniformGrid g(1.0, 6);
    const auto X = br::canonical_lift(br::GridPath(g, 2), 2);
    EXPECT_EQ(br::ynp_statistic(X, 4.0, 3, 0.5), 0.0);
    EXPECT_THROW(br::ynp_statistic(X, 4.0, 7, 0.5), br::RegimeError);
}

TEST(YnpStatistic, ReproducibleAcrossWorkerCounts) {
    br::BmStatisticConfig cfg;
    cfg.ns = {3, 5};
    cfg.level = 8;
    cfg.samples = 64;
    cfg.oracle_samples = 128;
    br::set_workers(1);
    const auto a = br::bm_besov_statistic(cfg);
    br::set_workers(3);
    const auto b = br::bm_besov_statistic(cfg);
    br::set_workers(0);
    ASSERT_EQ(a.levels.size(), b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        EXPECT_EQ(a.levels[i].mean, b.levels[i].mean);
        EXPECT_EQ(a.levels[i].variance, b.levels[i].variance);
        EXPECT_EQ(a.levels[i].oracle_mean, b.levels[i].oracle_mean);
    }
}

TEST(YnpStatistic, MomentMonotonicity) {
    br::BmStatisticConfig cfg;
    cfg.ns = {4, 6};
    cfg.level = 9;
    cfg.samples = 200;
    cfg.oracle_samples = 16;
    cfg.p = 2.0;
    const auto lo = br::bm_besov_statistic(cfg);
    cfg.p = 4.0;
    const auto hi = br::bm_besov_statistic(cfg);
    for (std::size_t i = 0; i < lo.levels.size(); ++i)
        EXPECT_LE(std::pow(lo.levels[i].mean, 1.0 / 2), std::pow(hi.levels[i].mean, 1.0 / 4) * (1 + 1e-12));
}

TEST(FbmStatistic, LevelOneMomentOracle) {
    br::FbmStatisticConfig cfg;
    cfg.hurst = 0.7;
    cfg.ns = {3, 4};
    cfg.level = 7;
    cfg.samples = 300;
    const auto rep = br::fbm_besov_statistic(cfg);
    for (const auto& l : rep.levels) EXPECT_NEAR(l.mean, l.oracle_mean, 4 * l.stderr_);
}

TEST(Pprod, ExponentChecks) {
    br::PprodConfig cfg;
    cfg.samples = 4;
    cfg.lengths = {32};
    cfg.p = 5.0;  // 1/8 + 1/8 != 1/5
    EXPECT_THROW(br::pprod_bdg_experiment(cfg), br::RegimeError);
    cfg.p = 0;
    cfg.gamma1 = 0.1;  // gamma1 <= 1/p1
    EXPECT_THROW(br::pprod_bdg_experiment(cfg), br::RegimeError);
}

TEST(Pprod, SmallRunReport) {
    br::PprodConfig cfg;
    cfg.samples = 40;
    cfg.lengths = {32, 64};
    const auto rep = br::pprod_bdg_experiment(cfg);
    ASSERT_EQ(rep.lengths.size(), 2u);
    EXPECT_DOUBLE_EQ(rep.p, 4.0);
    for (const auto& l : rep.lengths) {
        EXPECT_GT(l.ratio_median, 0.0);
        EXPECT_LE(l.ratio_median, l.ratio_p99);
        EXPECT_LE(l.ratio_p99, l.ratio_max);
    }
    EXPECT_EQ(rep.rows().size(), 12u);
}
