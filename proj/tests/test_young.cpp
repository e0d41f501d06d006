#include <gtest/gtest.h>

#include <cmath>

#include "besov_rough/errors.hpp"
#include "besov_rough/signals.hpp"
#include "besov_rough/young.hpp"

namespace br = besov_rough;
using br::kInf;

TEST(YoungRegime, Cases) {
    EXPECT_EQ(br::YoungRegime::make({0.6, 4, kInf}, {0.6, 4, kInf}).case_tag, 'a');
    EXPECT_EQ(br::YoungRegime::make({0.5, 4, 1}, {0.5, 4, 1}).case_tag, 'b');
    EXPECT_THROW(br::YoungRegime::make({0.4, 4, kInf}, {0.5, 4, kInf}), br::RegimeError);
}

TEST(YoungIntegral, SineAgainstCosine) {
    const br::BesovParams P{1.0, kInf, kInf};
    const auto reg = br::YoungRegime::make(P, P);
    const br::UniformGrid g(1.0, 12);
    const auto f = br::GridPath::sample_scalar(g, [](double t) { return std::sin(t); });
    const auto h = br::GridPath::sample_scalar(g, [](double t) { return std::cos(t); });
    const auto I = br::young_integral(f, h, reg, false);
    EXPECT_NEAR(I.integral(g.cells()), -0.2726756433, 1e-4);
}

TEST(YoungIntegral, HeavisideIntegrand) {
    const br::UniformGrid g(1.0, 12);
    const auto H = br::heaviside(g);
    const auto s = br::GridPath::sample_scalar(g, [](double t) { return std::exp(t); });
    const auto reg = br::YoungRegime::make({0.5, 2.0, kInf}, {1.0, 2.0, kInf});
    const auto I = br::young_integral(H, s, reg, false);
    EXPECT_NEAR(I.integral(g.cells()), std::exp(1.0) - std::exp(0.5), 1e-3);
}

TEST(YoungOde, ExponentialOracle) {
    const br::UniformGrid g(1.0, 10);
    const auto X = br::GridPath::sample_scalar(g, [](double t) { return std::sin(t); });
    const auto res = br::young_ode_solve(br::VectorField::linear(1, {{1.0}}), X, {1.0}, {0.9, kInf, kInf});
    for (std::size_t i = 0; i < g.size(); i += 17) EXPECT_NEAR(res.Y(i), std::exp(std::sin(g.time(i))), 1e-6);
    EXPECT_GT(res.bound_M, 0.0);
}

TEST(YoungOde, RejectsRoughDriver) {
    const br::UniformGrid g(1.0, 6);
    const auto X = br::GridPath::sample_scalar(g, [](double t) { return t; });
    EXPECT_THROW(br::young_ode_solve(br::VectorField::linear(1, {{1.0}}), X, {1.0}, {0.4, kInf, kInf}), br::RegimeError);
}

TEST(YoungStability, IdenticalDataGiveZero) {
    const br::UniformGrid g(1.0, 8);
    const auto X = br::GridPath::sample_scalar(g, [](double t) { return std::sin(2 * t); });
    const auto F = br::VectorField::linear(1, {{0.5}});
    const auto r = br::ito_lyons_probe_young(F, F, X, X, {1.0}, {1.0}, {0.9, kInf, kInf});
    EXPECT_EQ(r.output_dist, 0.0);
    EXPECT_EQ(r.ratio, 0.0);
    const auto r2 = br::ito_lyons_probe_young(F, F, X, X, {1.0}, {1.01}, {0.9, kInf, kInf});
    EXPECT_GT(r2.ratio, 0.0);
    EXPECT_TRUE(std::isfinite(r2.ratio));
}

TEST(Composition, LinearFieldIsExactlyScaled) {
    const br::UniformGrid g(1.0, 8);
    const auto Y = br::GridPath::sample_scalar(g, [](double t) { return std::sin(5 * t); });
    const auto rep = br::besov_composition_check(br::VectorField::linear(1, {{2.0}}), Y, {0.5, 2.0, 2.0}, 1.0);
    EXPECT_GT(rep.value.rhs, 0.0);
    EXPECT_LE(rep.value.lhs, rep.value.rhs * (1 + 1e-12));
}
