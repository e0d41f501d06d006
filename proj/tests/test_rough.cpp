#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "besov_rough/errors.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/stats.hpp"

namespace br = besov_rough;
using br::kInf;

namespace {

br::GridPath smooth2(int L) {
    return br::GridPath::sample(br::UniformGrid(1.0, L), 2, [](double t, std::span<double> v) {
        v[0] = std::sin(2 * std::numbers::pi * t);
        v[1] = std::cos(3 * t);
    });
}

double max_diff(const br::TwoParamField& A, const br::TwoParamField& B) {
    double m = 0.0;
    for (std::size_t i = 0; i < A.grid().size(); ++i)
        for (std::size_t j = i; j < A.grid().size(); ++j) {
            const auto a = A.at(i, j), b = B.at(i, j);
            for (std::size_t c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
        }
    return m;
}

}  // namespace

TEST(RoughPath, StratonovichLiftOfLinearPath) {
    const double v[2] = {1.5, -0.5};
    const auto x = br::GridPath::sample(br::UniformGrid(1.0, 5), 2, [&](double t, std::span<double> o) {
        o[0] = v[0] * t;
        o[1] = v[1] * t;
    });
    const auto X = br::canonical_lift(x, 2, br::LiftFlavor::stratonovich);
    for (std::size_t s = 0; s < 33; s += 5)
        for (std::size_t t = s; t < 33; t += 3) {
            const double h = x.grid().time(t) - x.grid().time(s);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) EXPECT_NEAR(X.level(2).value(s, t, a * 2 + b), v[a] * v[b] * h * h / 2, 1e-14);
        }
}

TEST(RoughPath, ChenHoldsAndDetectsFaults) {
    const br::UniformGrid g(1.0, 7);
    for (auto flavor : {br::LiftFlavor::ito, br::LiftFlavor::stratonovich}) {
        EXPECT_LT(br::chen_residual(br::canonical_lift(smooth2(7), 3, flavor)), 1e-12);
        EXPECT_LT(br::chen_residual(br::brownian_lift(2, g, 4, flavor)), 1e-12);
    }
    auto X = br::brownian_lift(2, g, 4).materialize();
    X.level(2).entry(10, 90)[2] += 1e-3;
    EXPECT_GT(br::chen_residual(X), 5e-4);
}

TEST(RoughPath, ItoAndStratonovichDifferByHalfBracket) {
    const br::UniformGrid g(1.0, 6);
    const auto I = br::brownian_lift(2, g, 9, br::LiftFlavor::ito);
    const auto S = br::brownian_lift(2, g, 9, br::LiftFlavor::stratonovich);
    EXPECT_NEAR(S.level(2).value(3, 50, 0) - I.level(2).value(3, 50, 0), 0.5 * (g.time(50) - g.time(3)), 1e-13);
    EXPECT_NEAR(S.level(2).value(3, 50, 1) - I.level(2).value(3, 50, 1), 0.0, 1e-13);
    EXPECT_NEAR(S.level(1).value(3, 50, 1), I.level(1).value(3, 50, 1), 1e-15);
}

TEST(RoughPath, LyonsExtensionMatchesItoLift) {
    const auto x = smooth2(7);
    const br::BesovParams P{0.9, kInf, kInf};
    const auto ext = br::lyons_extend(br::canonical_lift(x, 1, br::LiftFlavor::ito, P), 3);
    const auto ref = br::canonical_lift(x, 3, br::LiftFlavor::ito, P);
    for (int k = 1; k <= 3; ++k) EXPECT_LT(max_diff(ext.level(k), ref.level(k)), 1e-12);
}

TEST(RoughPath, LyonsExtensionRegime) {
    const auto X = br::canonical_lift(smooth2(5), 1, br::LiftFlavor::ito, {0.45, kInf, kInf});
    EXPECT_THROW(br::lyons_extend(X, 2), br::RegimeError);
}

TEST(RoughPath, DilationScalesNorm) {
    const auto X = br::brownian_lift(2, br::UniformGrid(1.0, 7), 1, br::LiftFlavor::stratonovich);
    const double base = br::rough_besov_norm(X);
    for (double lam : {0.5, -2.0, 3.0}) EXPECT_NEAR(br::rough_besov_norm(br::dilate(X, lam)), std::abs(lam) * base, 1e-10 * base);
    EXPECT_EQ(br::rough_metric(X, X), 0.0);
    EXPECT_GT(br::rough_metric(X, br::dilate(X, 1.1)), 0.0);
}

TEST(RoughPath, EmbeddingAndInterpolationReports) {
    const auto X = br::brownian_lift(2, br::UniformGrid(1.0, 7), 2);
    const auto e = br::check_rough_embedding(X);
    EXPECT_GT(e.lhs, 0.0);
    EXPECT_TRUE(std::isfinite(e.ratio));
    const auto i = br::rough_interpolation_check(X, 2, 1);
    EXPECT_GT(i.rhs, 0.0);
    EXPECT_TRUE(std::isfinite(i.ratio));
    const auto prof = br::rough_campanato_profile(X, 2);
    ASSERT_FALSE(prof.empty());
    for (const auto& l : prof) EXPECT_GE(l.value, 0.0);
}

TEST(RoughPath, SliceAndTruncate) {
    const auto X = br::canonical_lift(smooth2(6), 3);
    const auto S = X.slice(16, 32);
    EXPECT_EQ(S.grid().cells(), 32u);
    EXPECT_DOUBLE_EQ(S.level(3).value(2, 20, 5), X.level(3).value(18, 36, 5));
    EXPECT_EQ(X.truncate(2).depth(), 2);
    EXPECT_LT(br::chen_residual(S), 1e-12);
}

TEST(Fbm, VarianceAndHalfHurstIncrements) {
    const br::UniformGrid g(1.0, 6);
    const br::FbmSampler sampler(0.7, g);
    std::vector<double> end(400), incr(400);
    for (std::size_t s = 0; s < end.size(); ++s) {
        const auto x = sampler.sample(br::sample_seed(77, s));
        end[s] = x(g.cells()) * x(g.cells());
        incr[s] = std::pow(x(32) - x(16), 2);
    }
    EXPECT_NEAR(br::mean(end), 1.0, 4 * br::standard_error(end));
    EXPECT_NEAR(br::mean(incr), std::pow(0.25, 1.4), 4 * br::standard_error(incr));
    EXPECT_THROW(br::FbmSampler(1.2, g), br::RegimeError);
}
