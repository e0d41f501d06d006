#include <gtest/gtest.h>

#include <cmath>

#include "besov_rough/errors.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/sewing.hpp"
#include "besov_rough/young.hpp"

namespace br = besov_rough;
using br::kInf;

namespace {

br::GridPath sine(int L, double w = 1.0) {
    return br::GridPath::sample_scalar(br::UniformGrid(1.0, L), [w](double t) { return std::sin(w * t); });
}

}  // namespace

TEST(Sewing, AdditiveGermIsExact) {
    const auto f = br::brownian_path(2, br::UniformGrid(1.0, 8), 3);
    br::SewingInput in;
    in.germ = br::delta(f);
    const auto res = br::sew(in);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t c = 0; c < 2; ++c) EXPECT_NEAR(res.integral(i, c), f(i, c) - f(0, c), 1e-13);
    EXPECT_NEAR(res.remainder_norm, 0.0, 1e-12);
    for (const auto& l : res.levels) EXPECT_NEAR(l.diff_norm, 0.0, 1e-12);
}

TEST(Sewing, IntegralIsFinestRiemannSum) {
    const auto f = sine(7), g = sine(7, 3.0);
    br::SewingInput in;
    in.germ = br::young_germ(f, g);
    in.remainder_norm = false;
    const auto res = br::sew(in);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.grid().cells(); ++i) {
        acc += f(i) * (g(i + 1) - g(i));
        EXPECT_NEAR(res.integral(i + 1), acc, 1e-13);
    }
    // R = delta I - A.
    const auto R = br::sew_remainder(res.integral, in.germ);
    EXPECT_NEAR(R.value(3, 40), res.integral(40) - res.integral(3) - f(3) * (g(40) - g(3)), 1e-14);
}

TEST(Sewing, DyadicRiemannAndSuccessiveDifference) {
    const auto f = sine(6), g = sine(6, 2.0);
    const auto A = br::young_germ(f, g);
    for (int n = 0; n < 4; ++n) {
        const auto a = br::dyadic_riemann(A, n), b = br::dyadic_riemann(A, n + 1);
        const auto d = br::successive_difference(A, n);
        for (std::size_t s = 0; s + 32 <= 64; s += 16)
            EXPECT_NEAR(d.value(s, s + 32), b.value(s, s + 32) - a.value(s, s + 32), 1e-14);
    }
    // A partition containing every node reproduces the finest sum.
    std::vector<std::size_t> all;
    for (std::size_t i = 1; i < 64; ++i) all.push_back(i);
    EXPECT_NEAR(br::partition_riemann(A, all).value(0, 64), br::dyadic_riemann(A, 6).value(0, 64), 1e-14);
}

TEST(Sewing, RateCertificateForSmoothGerm) {
    const auto f = sine(10);
    br::SewingInput in;
    in.germ = br::young_germ(f, f);
    in.remainder_norm = false;
    const auto res = br::sew(in);
    const auto cert = br::rate_certificate(res, 2.0, kInf, 3, 8);
    EXPECT_NEAR(cert.slope, -1.0, 0.2);
    EXPECT_DOUBLE_EQ(cert.expected, -1.0);
    EXPECT_GT(cert.r2, 0.98);
}

TEST(Sewing, RegimeRejected) {
    br::SewingInput in;
    in.germ = br::delta(sine(5));
    in.gamma = 0.9;
    EXPECT_THROW(br::check_sewing_regime(in), br::RegimeError);
    in.gamma = 1.5;
    in.p2 = 0.5;  // max(1, 1/p2) = 2
    EXPECT_THROW(br::sew(in), br::RegimeError);
}

TEST(Sewing, EndpointProfileDecreasesForSmoothGerm) {
    const auto f = sine(9);
    br::SewingInput in;
    in.germ = br::young_germ(f, f);
    const auto res = br::sew(in);
    const auto prof = br::small_oscillation_check(res.remainder, kInf);
    ASSERT_FALSE(prof.value.empty());
    EXPECT_TRUE(prof.decreasing);
}

TEST(Sewing, DeltaHolderFitOfSmoothGerm) {
    const auto f = sine(6);
    const auto fit = br::delta_holder_fit(br::young_germ(f, f), 2.0, kInf);
    EXPECT_GT(fit.theta, 0.0);
    EXPECT_LT(fit.theta, 0.5);
    EXPECT_GT(fit.M, 0.0);
    EXPECT_TRUE(std::isfinite(fit.M));
}
