#include <gtest/gtest.h>

#include <cmath>

#include "besov_rough/random.hpp"
#include "besov_rough/tensor.hpp"

namespace br = besov_rough;

namespace {

br::Tensor random_tensor(int n, int N, std::uint64_t seed) {
    br::Rng rng(seed);
    br::Tensor t = br::Tensor::one(n, N);
    for (std::size_t i = 1; i < t.size(); ++i) t.data()[i] = rng.normal();
    return t;
}

double max_diff(const br::Tensor& a, const br::Tensor& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace

TEST(Tensor, Sizes) {
    EXPECT_EQ(br::tensor_size(2, 3), 15u);
    EXPECT_EQ(br::tensor_level_offset(2, 2), 3u);
    EXPECT_EQ(br::Tensor(3, 2).level_size(2), 9u);
}

TEST(Tensor, InverseAndAssociativity) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto x = random_tensor(3, 3, s), y = random_tensor(3, 3, s + 100), z = random_tensor(3, 3, s + 200);
        EXPECT_LT(max_diff(br::tensor_mul(x, br::tensor_inv(x)), br::Tensor::one(3, 3)), 1e-12);
        EXPECT_LT(max_diff(br::tensor_mul(br::tensor_mul(x, y), z), br::tensor_mul(x, br::tensor_mul(y, z))), 1e-12);
    }
}

TEST(Tensor, ExponentialIsGroupLike) {
    const double v[2] = {0.3, -1.2}, w[2] = {0.6, -2.4};
    const auto e = br::Tensor::exp(v, 2, 4);
    // exp(v) exp(v) = exp(2v) since v commutes with itself.
    EXPECT_LT(max_diff(br::tensor_mul(e, e), br::Tensor::exp(w, 2, 4)), 1e-13);
    EXPECT_NEAR(br::tensor_gauge(e), std::hypot(0.3, 1.2), 1e-13);
    const double mv[2] = {-0.3, 1.2};
    EXPECT_LT(max_diff(br::tensor_inv(e), br::Tensor::exp(mv, 2, 4)), 1e-13);
}

TEST(Tensor, DilationIsHomomorphism) {
    const auto x = random_tensor(2, 3, 1), y = random_tensor(2, 3, 2);
    const double lam = -1.7;
    EXPECT_LT(max_diff(br::tensor_dilate(br::tensor_mul(x, y), lam),
                       br::tensor_mul(br::tensor_dilate(x, lam), br::tensor_dilate(y, lam))),
              1e-12);
}

TEST(Tensor, HomogeneousNormProperties) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto x = random_tensor(2, 2, s);
        EXPECT_NEAR(br::homogeneous_norm(x), br::homogeneous_norm(br::tensor_inv(x)), 1e-12);
        EXPECT_NEAR(br::homogeneous_norm(br::tensor_dilate(x, 2.5)), 2.5 * br::homogeneous_norm(x), 1e-12);
        EXPECT_NEAR(br::homogeneous_distance(x, x), 0.0, 1e-12);
    }
    EXPECT_EQ(br::homogeneous_norm(br::Tensor::one(2, 3)), 0.0);
}
