#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "besov_rough/grid.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/tensor.hpp"

namespace besov_rough {

/// Level-N rough path: X^(k) is a TwoParamField with n^k components, k = 1..N.
class RoughPath {
public:
    RoughPath() = default;
    RoughPath(int n, int N, std::vector<TwoParamField> levels, BesovParams params);

    /// Fields X_st = S_s^-1 (*) S_t from a tensor-valued path S sampled at every node (S_0 = 1).
    static RoughPath from_signature(const UniformGrid& grid, int n, int N, std::vector<double> signature,
                                    BesovParams params, TwoParamField::Mode mode = TwoParamField::Mode::automatic);

    const UniformGrid& grid() const { return levels_.front().grid(); }
    int base_dim() const { return n_; }
    int depth() const { return N_; }
    const TwoParamField& level(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
    TwoParamField& level(int k) { return levels_.at(static_cast<std::size_t>(k - 1)); }
    const std::vector<TwoParamField>& levels() const { return levels_; }
    const BesovParams& params() const { return params_; }
    void set_params(const BesovParams& p) { params_ = p; }

    Tensor element(std::size_t i, std::size_t j) const;
    /// First-level path x_t = X^(1)_{0t}.
    GridPath path() const;

    RoughPath slice(std::size_t start, std::size_t len) const;
    RoughPath materialize() const;
    RoughPath truncate(int N) const;

private:
    int n_ = 0, N_ = 0;
    std::vector<TwoParamField> levels_;
    BesovParams params_;
};

/// ito: one-step elements (1, dx, 0, ...), i.e. left-point iterated sums.
/// stratonovich: one-step elements exp(dx), the geometric lift that is exact for piecewise-linear paths.
enum class LiftFlavor { ito, stratonovich };

/// Default parameters attached to constructed lifts.
inline constexpr BesovParams kDefaultLiftParams{0.45, 8.0, kInf};

RoughPath canonical_lift(const GridPath& x, int N, LiftFlavor flavor = LiftFlavor::ito,
                         const BesovParams& params = kDefaultLiftParams,
                         TwoParamField::Mode mode = TwoParamField::Mode::automatic);

RoughPath dilate(const RoughPath& X, double lambda);

double rough_besov_norm(const RoughPath& X);
double rough_metric(const RoughPath& X, const RoughPath& Y);

/// Max over checked triples (s, t, u) and levels k of |(X_st (*) X_tu)^(k) - X_su^(k)|.
/// All triples when 2^L <= 64; otherwise every triple (0, t, u) plus `budget` random triples.
double chen_residual(const RoughPath& X, std::size_t budget = 10000, std::uint64_t seed = 0xc4e4);

/// Next levels up to N by sewing A_st = sum_{k=1..M} X^(M-k+1)_{0s} (*) X^(k)_{st}.
RoughPath lyons_extend(const RoughPath& X, int N);

/// Standard Brownian motion in R^n with its level-2 lift (Stratonovich adds (t - s)/2 Id).
RoughPath brownian_lift(int n, const UniformGrid& grid, std::uint64_t seed, LiftFlavor flavor = LiftFlavor::ito,
                        const BesovParams& params = {0.45, 8.0, kInf},
                        TwoParamField::Mode mode = TwoParamField::Mode::automatic);
GridPath brownian_path(int n, const UniformGrid& grid, std::uint64_t seed);

/// Exact-covariance fractional Brownian motion sampler (Cholesky factor on grid nodes t_1..t_C).
class FbmSampler {
public:
    FbmSampler(double hurst, const UniformGrid& grid);
    GridPath sample(std::uint64_t seed, std::size_t dim = 1) const;
    double hurst() const { return H_; }

private:
    double H_;
    UniformGrid grid_;
    std::shared_ptr<const std::vector<double>> factor_;  // lower-triangular C x C, row-major
};

GridPath fbm_path(double hurst, const UniformGrid& grid, std::uint64_t seed, std::size_t dim = 1);

/// Per-level Holder norms sum_k ||X^(k)||_{C^{k(alpha - 1/p)}}^(1/k) against the rough Besov norm.
InequalityReport check_rough_embedding(const RoughPath& X);

/// ||X^(k)||_{B^{j alpha}_{p/j,q/j}} against T^{(k-j)(alpha - 1/p)} |||X|||^k for j < k.
InequalityReport rough_interpolation_check(const RoughPath& X, int k, int j);

struct CampanatoLevel {
    double h;
    double value;
};

/// For dyadic lengths h: max over aligned [a, a+h] of h^-2 times the sum over s < t in [a, a+h] of |X^(k)_st| ds dt.
std::vector<CampanatoLevel> rough_campanato_profile(const RoughPath& X, int k);

}  // namespace besov_rough
