#include <gtest/gtest.h>

#include <cmath>

#include "besov_rough/grid.hpp"
#include "besov_rough/random.hpp"

namespace br = besov_rough;

TEST(UniformGrid, NodesAndMesh) {
    const br::UniformGrid g(2.0, 3);
    EXPECT_EQ(g.cells(), 8u);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_DOUBLE_EQ(g.mesh(), 0.25);
    EXPECT_DOUBLE_EQ(g.time(8), 2.0);
    EXPECT_EQ(g.refine(2).cells(), 32u);
    EXPECT_EQ(g.coarsen(1).cells(), 4u);
}

TEST(GridPath, SubsampleAndRefineRoundTrip) {
    const br::UniformGrid g(1.0, 4);
    const auto f = br::GridPath::sample_scalar(g, [](double t) { return std::sin(3 * t); });
    const auto r = f.refine(2);
    EXPECT_EQ(r.grid().level(), 6);
    const auto back = r.subsample(2);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_DOUBLE_EQ(back(i), f(i));
    // Linear interpolation at a midpoint.
    EXPECT_NEAR(r(2), 0.5 * (f(0) + f(1)), 1e-15);
}

TEST(TwoParamField, EagerAndLazyAgree) {
    const br::UniformGrid g(1.0, 5);
    auto fn = [](std::size_t i, std::size_t j, double* out) {
        out[0] = static_cast<double>(i) + 100.0 * static_cast<double>(j);
        out[1] = static_cast<double>(j - i);
    };
    const auto eager = br::TwoParamField::from_function(g, 2, fn, br::TwoParamField::Mode::eager);
    const auto lazy = br::TwoParamField::from_function(g, 2, fn, br::TwoParamField::Mode::lazy);
    EXPECT_FALSE(eager.is_lazy());
    EXPECT_TRUE(lazy.is_lazy());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j) {
            EXPECT_EQ(eager.at(i, j), lazy.at(i, j));
            EXPECT_DOUBLE_EQ(eager.value(i, j, 0), i + 100.0 * j);
        }
}

TEST(TwoParamField, SliceReindexes) {
    const br::UniformGrid g(1.0, 4);
    br::Rng rng(3);
    std::vector<double> v(g.size());
    for (double& x : v) x = rng.normal();
    const br::GridPath f(g, 1, v);
    const auto A = br::delta(f, br::TwoParamField::Mode::eager);
    const auto S = A.slice(4, 8);
    EXPECT_EQ(S.grid().cells(), 8u);
    EXPECT_DOUBLE_EQ(S.grid().horizon(), 0.5);
    EXPECT_DOUBLE_EQ(S.value(1, 5), v[9] - v[5]);
}

TEST(TwoParamField, Delta2OfIncrementVanishes) {
    const br::UniformGrid g(1.0, 5);
    const auto f = br::GridPath::sample_scalar(g, [](double t) { return std::exp(t); });
    const auto A = br::delta(f);
    for (std::size_t i = 0; i < g.size(); i += 3)
        for (std::size_t k = i; k < g.size(); k += 2)
            for (std::size_t j = k; j < g.size(); j += 5) EXPECT_NEAR(br::delta2(A, i, k, j)[0], 0.0, 1e-14);
}

TEST(TwoParamField, ArithmeticAndCopyOnWrite) {
    const br::UniformGrid g(1.0, 3);
    br::TwoParamField A(g, 1);
    *A.entry(1, 4) = 2.0;
    br::TwoParamField B = A;
    *B.entry(1, 4) = 5.0;
    EXPECT_DOUBLE_EQ(A.value(1, 4), 2.0);
    EXPECT_DOUBLE_EQ((B - A).value(1, 4), 3.0);
    EXPECT_DOUBLE_EQ((B + A).scaled(2.0).value(1, 4), 14.0);
}
