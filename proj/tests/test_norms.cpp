#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "besov_rough/errors.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/signals.hpp"

namespace br = besov_rough;
using br::kInf;

namespace {

br::GridPath random_path(int L, std::uint64_t seed) { return br::random_piecewise_linear(br::UniformGrid(1.0, L), 1, 12, seed); }

// Dyadic seminorm written directly from its definition.
double dyadic_oracle(const br::GridPath& f, double alpha, double p, double q) {
    const std::size_t C = f.grid().cells();
    double acc = 0.0;
    for (int n = 1; n <= f.grid().level(); ++n) {
        const std::size_t k = C >> n;
        double s = 0.0;
        for (std::size_t r = 0; r + k <= C - 1; ++r) s += std::pow(std::abs(f(r + k) - f(r)), p) * f.grid().mesh();
        const double term = std::pow(2.0, n * alpha) * std::pow(s, 1.0 / p);
        acc = std::isinf(q) ? std::max(acc, term) : acc + std::pow(term, q);
    }
    return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

// Exhaustive search over all partitions of a small grid.
double pvariation_bruteforce(const br::GridPath& f, double p) {
    const std::size_t C = f.grid().cells();
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (C - 1)); ++mask) {
        double s = 0.0;
        std::size_t prev = 0;
        for (std::size_t i = 1; i <= C; ++i) {
            if (i < C && !(mask >> (i - 1) & 1)) continue;
            s += std::pow(std::abs(f(i) - f(prev)), p);
            prev = i;
        }
        best = std::max(best, s);
    }
    return std::pow(best, 1.0 / p);
}

}  // namespace

TEST(LpModulus, Examples) {
    const br::UniformGrid g(1.0, 10);
    EXPECT_EQ(br::lp_modulus(br::GridPath::sample_scalar(g, [](double) { return 3.0; }), 2.0, 0.5), 0.0);
    EXPECT_NEAR(br::lp_modulus(br::heaviside(g), 2.0, 0.25), 0.5, 1e-12);
    EXPECT_NEAR(br::lp_modulus(br::GridPath::sample_scalar(g, [](double t) { return t; }), kInf, 0.25), 0.25, 1e-12);
    EXPECT_THROW(br::lp_modulus(br::heaviside(g), 2.0, 0.0), std::invalid_argument);
}

TEST(LpModulus, NondecreasingInTau) {
    const auto f = br::brownian_path(1, br::UniformGrid(1.0, 9), 11);
    for (double p : {1.0, 2.0, 5.0, kInf}) {
        double prev = 0.0;
        for (int n = 9; n >= 1; --n) {
            const double w = br::lp_modulus(f, p, std::exp2(-n));
            EXPECT_GE(w, prev);
            prev = w;
        }
    }
}

TEST(BesovSeminorm, HeavisideCriticalNormIsOne) {
    const auto H = br::heaviside(br::UniformGrid(1.0, 12));
    for (double p : {2.0, 4.0}) EXPECT_NEAR(br::besov_seminorm(H, {1.0 / p, p, kInf}), 1.0, 1e-12);
}

TEST(BesovSeminorm, LinearPathClosedForm) {
    const auto f = br::GridPath::sample_scalar(br::UniformGrid(1.0, 10), [](double t) { return t; });
    EXPECT_NEAR(br::besov_seminorm(f, {0.5, 2.0, kInf}), 0.5, 1e-12);
}

TEST(BesovSeminorm, MatchesDirectDyadicSum) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto f = random_path(8, s);
        for (auto [a, p, q] : {std::tuple{0.6, 2.0, 2.0}, {0.7, 4.0, kInf}, {0.4, 3.0, 1.5}})
            EXPECT_NEAR(br::besov_seminorm(f, {a, p, q}), dyadic_oracle(f, a, p, q), 1e-10 * dyadic_oracle(f, a, p, q));
    }
}

TEST(BesovSeminorm, ConstantAndRejectsTrivialRegime) {
    const auto c = br::GridPath::sample_scalar(br::UniformGrid(1.0, 8), [](double) { return 1.0; });
    EXPECT_EQ(br::besov_seminorm(c, {0.5, 2.0, 2.0}), 0.0);
    EXPECT_THROW(br::besov_seminorm(c, {1.2, 2.0, 2.0}), br::RegimeError);
}

TEST(BesovSeminorm, AbsoluteHomogeneity) {
    const auto f = random_path(9, 4);
    for (auto form : {br::BesovForm::dyadic, br::BesovForm::integral}) {
        const br::BesovParams P{0.55, 3.0, 2.0};
        const double base = br::besov_seminorm(f, P, form);
        for (double lam : {-2.5, 0.3, 7.0}) EXPECT_NEAR(br::besov_seminorm(f.scaled(lam), P, form), std::abs(lam) * base, 1e-12 * base * 10);
    }
}

TEST(BesovSeminorm, TriangleInequality) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto f = random_path(8, 2 * s), g = random_path(8, 2 * s + 1);
        const br::BesovParams P{0.6, 2.0 + s % 3, s % 2 ? kInf : 2.0};
        EXPECT_LE(br::besov_seminorm(f + g, P), br::besov_seminorm(f, P) + br::besov_seminorm(g, P) + 1e-12);
    }
}

TEST(BesovSeminorm, HeavisideDivergesLikeRootL) {
    for (int L : {6, 8, 10}) {
        const double v = br::besov_seminorm(br::heaviside(br::UniformGrid(1.0, L)), {0.5, 2.0, 2.0});
        const double w = br::besov_seminorm(br::heaviside(br::UniformGrid(1.0, L + 4)), {0.5, 2.0, 2.0});
        EXPECT_GE(w - v, 0.8 * (std::sqrt(L + 4.0) - std::sqrt(double(L))) * (v / std::sqrt(double(L))));
    }
}

TEST(BesovSeminorm, LogLogSignalStaysBounded) {
    for (double p : {2.0, 4.0}) {
        const double a = br::besov_seminorm(br::loglog_signal(br::UniformGrid(1.0, 10)), {1.0 / p, p, p});
        const double b = br::besov_seminorm(br::loglog_signal(br::UniformGrid(1.0, 14)), {1.0 / p, p, p});
        EXPECT_LT(b, 1.5 * a);
    }
}

TEST(BesovSeminorm, ReparametrizationInvariance) {
    // phi maps [0, 1/2] onto [0, 1/4] and [1/2, 1] onto [1/4, 1]; H o phi^-1 jumps at the node 1/4.
    const br::UniformGrid g(1.0, 10);
    for (double p : {2.0, 4.0})
        EXPECT_NEAR(br::besov_seminorm(br::heaviside(g, 0.25), {1.0 / p, p, kInf}),
                    br::besov_seminorm(br::heaviside(g), {1.0 / p, p, kInf}), 1e-12);
}

TEST(BesovMetric, AxiomsAndBruteForce) {
    const br::UniformGrid g(1.0, 8);
    const auto f = random_path(8, 1), h = random_path(8, 2);
    const br::BesovParams P{0.4, 2.0, 2.0};
    EXPECT_EQ(br::besov_metric(f, f, P), 0.0);
    EXPECT_DOUBLE_EQ(br::besov_metric(f, h, P), br::besov_metric(h, f, P));
    const auto H = br::heaviside(g);
    const auto zero = br::GridPath(g, 1);
    double l2 = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) l2 += H(i) * H(i) * g.mesh();
    EXPECT_NEAR(br::besov_metric(H, zero, P), std::sqrt(l2) + dyadic_oracle(H, 0.4, 2.0, 2.0), 1e-12);
}

TEST(FormEquivalence, RatioStableUnderRefinement) {
    for (std::uint64_t s = 0; s < 6; ++s) {
        const br::BesovParams P{0.7, 4.0, s % 2 ? kInf : 2.0};
        const auto r = [&](int L) {
            const auto f = br::random_piecewise_linear(br::UniformGrid(1.0, L), 1, 10, s);
            return br::besov_seminorm(f, P, br::BesovForm::dyadic) / br::besov_seminorm(f, P, br::BesovForm::integral);
        };
        const double r8 = r(8), r10 = r(10);
        EXPECT_GT(r8, 0.1);
        EXPECT_LT(r8, 10.0);
        EXPECT_NEAR(r10 / r8, 1.0, 0.1);
    }
}

TEST(TwoParamNorm, Examples) {
    const br::UniformGrid g(1.0, 8);
    EXPECT_EQ(br::two_param_norm(br::delta(br::GridPath::sample_scalar(g, [](double) { return 2.0; })), 0.5, 2, 2), 0.0);
    const auto sq = br::TwoParamField::from_function(g, 1, [&](std::size_t i, std::size_t j, double* o) {
        const double h = g.time(j) - g.time(i);
        o[0] = h * h;
    });
    EXPECT_NEAR(br::two_param_norm(sq, 2.0, kInf, kInf), 1.0, 1e-12);
    const auto f = random_path(8, 9);
    for (auto [a, p, q] : {std::tuple{0.5, 2.0, 2.0}, {0.8, kInf, kInf}, {0.3, 1.5, 4.0}})
        EXPECT_NEAR(br::two_param_norm(br::delta(f), a, p, q), br::besov_seminorm(f, {a, p, q}, br::BesovForm::integral),
                    1e-12 * br::two_param_norm(br::delta(f), a, p, q));
}

TEST(HolderSeminorm, Examples) {
    const br::UniformGrid g(1.0, 8);
    EXPECT_NEAR(br::holder_seminorm(br::GridPath::sample_scalar(g, [](double t) { return t; }), 1.0), 1.0, 1e-12);
    EXPECT_EQ(br::holder_seminorm(br::GridPath(g, 1), 0.5), 0.0);
}

TEST(PVariation, MatchesExhaustiveSearch) {
    for (std::uint64_t s = 0; s < 6; ++s) {
        const auto f = br::brownian_path(1, br::UniformGrid(1.0, 4), 100 + s);
        for (double p : {1.0, 1.5, 2.0, 3.5}) EXPECT_NEAR(br::pvariation(f, p), pvariation_bruteforce(f, p), 1e-12);
    }
}

TEST(PVariation, Examples) {
    const br::UniformGrid g(1.0, 8);
    const auto mono = br::GridPath::sample_scalar(g, [](double t) { return t * t + t; });
    EXPECT_NEAR(br::pvariation(mono, 1.0), 2.0, 1e-12);
    EXPECT_NEAR(br::pvariation(br::heaviside(g), 2.7), 1.0, 1e-12);
    EXPECT_NEAR(br::oscillation_variation(br::heaviside(g), 2.7), 0.5, 1e-12);
    EXPECT_THROW(br::pvariation(mono, 0.5), br::RegimeError);
}

TEST(PVariation, SuperadditiveOverHalves) {
    const auto f = br::brownian_path(1, br::UniformGrid(1.0, 8), 5);
    for (double p : {1.0, 2.0, 3.0}) {
        const double whole = std::pow(br::pvariation(f, p), p);
        const double left = std::pow(br::pvariation(f.slice(0, 128), p), p);
        const double right = std::pow(br::pvariation(f.slice(128, 128), p), p);
        EXPECT_GE(whole, left + right - 1e-12);
    }
}

TEST(PVariation, SandwichWithOscillationVariation) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto f = br::brownian_path(1, br::UniformGrid(1.0, 7), 900 + s);
        const double p = 1.0 + 0.15 * static_cast<double>(s);
        const double v = br::pvariation(f, p), o = br::oscillation_variation(f, p);
        EXPECT_LE(0.5 * v, o * (1 + 1e-12));
        EXPECT_LE(o, v * (1 + 1e-12));
    }
}

TEST(PVariation, SawtoothDynamicProgramValue) {
    // The optimal partition visits every extremum, so the value is 2^{(n+1)/r} times the half-amplitude.
    const br::UniformGrid g(1.0, 10);
    for (int n : {2, 4, 6}) {
        const double v = br::pvariation(br::sawtooth(g, 0.5, n), 1.6);
        EXPECT_NEAR(v, std::exp2((n + 1) / 1.6) * std::exp2(-0.5 * n) / 2, 1e-12);
    }
}

TEST(Campanato, Examples) {
    const br::UniformGrid g(1.0, 8);
    EXPECT_EQ(br::campanato_ratio(br::GridPath(g, 1), 0.5), 0.0);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto f = random_path(8, 40 + s);
        const double r = br::campanato_ratio(f, 0.5) / br::holder_seminorm(f, 0.5);
        EXPECT_GT(r, 0.0);
        EXPECT_LE(r, 2.0);
    }
}

TEST(Embedding, HolderAndVariationReports) {
    const br::UniformGrid g(1.0, 10);
    const auto c = br::GridPath(g, 1);
    EXPECT_EQ(br::check_embedding(c, {0.6, 4.0, kInf}, br::EmbeddingTarget::holder).ratio, 0.0);
    const auto rep = br::check_embedding(br::heaviside(g), {0.5, 2.0, kInf}, br::EmbeddingTarget::variation);
    EXPECT_NEAR(rep.lhs, 1.0, 1e-12);
    EXPECT_NEAR(rep.rhs, 1.0, 1e-12);
    const auto f = random_path(10, 3);
    const auto a = br::check_embedding(f, {0.6, 4.0, kInf}, br::EmbeddingTarget::holder);
    const auto b = br::check_embedding(random_path(12, 3), {0.6, 4.0, kInf}, br::EmbeddingTarget::holder);
    EXPECT_NEAR(b.ratio / a.ratio, 1.0, 0.1);
}

TEST(EndpointModulus, EllNonincreasingAndIntegrable) {
    const br::EndpointModulus m{2.0, 0.1, 1.0};
    double prev = m.ell(1e-12);
    for (double h = 1e-11; h < 1.0; h *= 10) {
        EXPECT_LE(m.ell(h), prev + 1e-15);
        prev = m.ell(h);
    }
    // int_{2^-40}^{1} ell^{-r} dh/h in log coordinates.
    double integral = 0.0;
    for (int k = 0; k < 40 * 16; ++k) {
        const double h = std::exp2(-k / 16.0);
        integral += std::pow(m.ell(h), -m.r) * std::log(2.0) / 16.0;
    }
    EXPECT_TRUE(std::isfinite(integral));
    EXPECT_DOUBLE_EQ((br::EndpointModulus{kInf, 0.1, 1.0}.ell(0.01)), 1.0);
}
