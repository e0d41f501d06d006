#include <gtest/gtest.h>

#include <algorithm>

#include <cmath>

#include "besov_rough/controlled.hpp"
#include "besov_rough/errors.hpp"

namespace br = besov_rough;
using br::kInf;

namespace {

br::GridPath smooth(int L, std::size_t dim) {
    return br::GridPath::sample(br::UniformGrid(1.0, L), dim, [](double t, std::span<double> v) {
        v[0] = std::sin(t);
        if (v.size() > 1) v[1] = std::cos(2 * t);
    });
}

br::GridPath ones(const br::UniformGrid& g) { return br::GridPath(g, 1, std::vector<double>(g.size(), 1.0)); }

}  // namespace

TEST(Controlled, RemainderDefinition) {
    const auto X = br::brownian_lift(1, br::UniformGrid(1.0, 6), 5);
    const auto W = X.path();
    const br::ControlledPath Y(X, W, ones(W.grid()));
    for (std::size_t s = 0; s < W.size(); s += 7)
        for (std::size_t t = s; t < W.size(); t += 5) EXPECT_NEAR(Y.remainder().value(s, t), 0.0, 1e-15);
    EXPECT_THROW(br::ControlledPath(X, W, br::GridPath(W.grid(), 2)), std::invalid_argument);
}

TEST(RoughIntegral, GeometricLiftGivesExactChainRule) {
    const auto x = smooth(8, 1);
    const auto X = br::canonical_lift(x, 2, br::LiftFlavor::stratonovich);
    const auto I = br::rough_integral(br::ControlledPath(X, x, ones(x.grid())));
    for (std::size_t t = 0; t < x.size(); t += 9)
        EXPECT_NEAR(I.Z.Y()(t), 0.5 * (x(t) * x(t) - x(0) * x(0)), 1e-13);
    // Z' = Y bit-exactly.
    EXPECT_EQ(I.Z.Yprime().values(), x.values());
}

TEST(RoughIntegral, ItoFormulaPathwise) {
    const br::UniformGrid g(1.0, 9);
    const auto X = br::brownian_lift(1, g, 21, br::LiftFlavor::ito);
    const auto W = X.path();
    const auto I = br::rough_integral(br::ControlledPath(X, W, ones(g)), false);
    double qv = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) qv += std::pow(W(i + 1) - W(i), 2);
    EXPECT_NEAR(I.Z.Y()(g.cells()), 0.5 * W(g.cells()) * W(g.cells()) - 0.5 * qv, 1e-12);
}

TEST(Compose, LinearFieldActsOnBothComponents) {
    const auto x = smooth(6, 2);
    const auto X = br::canonical_lift(x, 2, br::LiftFlavor::stratonovich);
    br::GridPath id(x.grid(), 4);
    for (std::size_t i = 0; i < id.size(); ++i) id(i, 0) = id(i, 3) = 1.0;
    const br::ControlledPath Y(X, x, id);
    // F(y) = 3 y as a map R^2 -> R^{2x1}.
    const br::VectorField F(2, 2, 1,
                            [](const double* y, double* o) { o[0] = 3 * y[0], o[1] = 3 * y[1]; },
                            [](const double*, double* o) { o[0] = 3, o[1] = 0, o[2] = 0, o[3] = 3; },
                            [](const double*, double* o) { std::fill(o, o + 8, 0.0); });
    const auto FY = br::compose_controlled(F, Y);
    for (std::size_t i = 0; i < x.size(); i += 5) {
        EXPECT_DOUBLE_EQ(FY.Y()(i, 1), 3 * x(i, 1));
        EXPECT_DOUBLE_EQ(FY.Yprime()(i, 0), 3.0);
        EXPECT_DOUBLE_EQ(FY.Yprime()(i, 1), 0.0);
    }
    const auto rep = br::compose_bound_check(F, Y);
    EXPECT_LE(rep.lhs, rep.rhs);
}

TEST(Rde, ExponentialOracle) {
    const auto x = smooth(10, 1);
    const auto X = br::canonical_lift(x, 2, br::LiftFlavor::stratonovich);
    br::RdeOptions opts;
    opts.with_report = false;
    const auto res = br::rde_solve(br::builtin_field("linear", 1, 1), X, {2.0}, opts);
    for (std::size_t i = 0; i < x.size(); i += 31) EXPECT_NEAR(res.solution.Y()(i), 2.0 * std::exp(x(i) - x(0)), 1e-6);
    // Y' = f(Y).
    EXPECT_DOUBLE_EQ(res.solution.Yprime()(100), res.solution.Y()(100));
}

TEST(Rde, DavieSlopeNearThreeForSmoothDriver) {
    const auto X = br::canonical_lift(smooth(11, 2), 2, br::LiftFlavor::stratonovich);
    br::RdeOptions opts;
    opts.tol = 1e-13;
    opts.davie_h_lo = 0x1p-8;
    const auto res = br::rde_solve(br::builtin_field("linear", 1, 2), X, {1.0}, opts);
    ASSERT_TRUE(res.davie.has_value());
    EXPECT_NEAR(res.davie->slope, 3.0, 0.3);
}

TEST(Rde, FieldClassChecks) {
    const br::VectorField c2(1, 1, 1, [](const double* y, double* o) { o[0] = y[0]; },
                             [](const double*, double* o) { o[0] = 1; }, {}, br::Smoothness::C2);
    EXPECT_NO_THROW(br::check_rde_field(c2, {0.55, 8, kInf}));
    EXPECT_THROW(br::check_rde_field(c2, {0.45, 8, kInf}), br::RegimeError);
    EXPECT_THROW(br::check_rde_field(c2, {1.0 / 3.0, kInf, kInf}), br::RegimeError);
    EXPECT_THROW(br::check_rde_field(br::builtin_field("linear", 1, 1), {0.3, 8, kInf}), br::RegimeError);
}

TEST(Rde, StabilityProbeZeroForIdenticalData) {
    const auto X = br::canonical_lift(smooth(7, 2), 2, br::LiftFlavor::stratonovich);
    const auto F = br::builtin_field("rotation", 2, 2);
    br::RdeOptions opts;
    opts.with_report = false;
    const auto r = br::rde_stability_probe(F, F, X, X, {1, 0}, {1, 0}, opts);
    EXPECT_EQ(r.output_dist, 0.0);
    EXPECT_TRUE(r.beta_admissible);
    const auto r2 = br::rde_stability_probe(F, F, X, X, {1, 0}, {1.01, 0}, opts);
    EXPECT_GT(r2.ratio, 0.0);
}

TEST(TimeAugmentation, PreservesChen) {
    const auto X = br::brownian_lift(2, br::UniformGrid(1.0, 6), 8, br::LiftFlavor::stratonovich);
    const auto Xt = br::with_time_coordinate(X);
    EXPECT_EQ(Xt.base_dim(), 3);
    EXPECT_LT(br::chen_residual(Xt), 1e-12);
    const double h = Xt.grid().time(40) - Xt.grid().time(8);
    EXPECT_NEAR(Xt.level(2).value(8, 40, 8), h * h / 2, 1e-14);
}

TEST(RemainderBounds, ReportsFiniteRatios) {
    const auto X = br::brownian_lift(1, br::UniformGrid(1.0, 7), 3, br::LiftFlavor::ito);
    const auto W = X.path();
    const br::ControlledPath Y(X, W.scaled(2.0), ones(W.grid()).scaled(2.0));
    const auto b = br::remainder_bounds_check(Y, 0.8);
    EXPECT_TRUE(std::isfinite(b.holder.ratio));
    EXPECT_TRUE(std::isfinite(b.control.ratio));
    EXPECT_THROW(br::remainder_bounds_check(Y, 0.5), br::RegimeError);
}
