#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "besov_rough/grid.hpp"

namespace besov_rough {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Smoothness alpha, integrability p and secondary index q of a Besov space.
struct BesovParams {
    double alpha = 0.5;
    double p = 2.0;
    double q = kInf;

    /// Throws RegimeError when alpha > max(1, 1/p) or an index is not positive.
    void validate() const;

    bool young_ok() const;
    bool level2_ok() const;
    bool levelN_ok(int N) const;
};

enum class BesovForm { dyadic, integral };

/// l_r(h) = |log(min(h, 1/2))|^(1/r + eps), l_inf = 1, and w_r(h) = h^max(1, 1/p2) l_r(h).
struct EndpointModulus {
    double r = kInf;
    double epsilon = 0.1;
    double p2 = 1.0;

    double ell(double h) const;
    double omega(double h) const;
};

/// |x|^p computed from s = |x|^2, exact for integer p/2.
double pow_from_square(double s, double p);

/// Left-endpoint Riemann L^p norm over all cells (max over nodes when p = inf).
double lp_norm(const GridPath& f, double p);

/// prof[k] = || f_{.+k mesh} - f_. ||_{L^p[0, T - k mesh]} for k = 0..kmax.
std::vector<double> shift_profile(const GridPath& f, double p, std::size_t kmax);

/// omega_p(f, tau): sup over every grid shift h <= tau.
double lp_modulus(const GridPath& f, double p, double tau);

struct BesovLevel {
    int n;
    double h;
    double lp_increment_norm;
};

struct BesovReport {
    double seminorm;
    std::vector<BesovLevel> levels;
};

BesovReport besov_report(const GridPath& f, const BesovParams& params, BesovForm form = BesovForm::dyadic);
double besov_seminorm(const GridPath& f, const BesovParams& params, BesovForm form = BesovForm::dyadic);
double besov_metric(const GridPath& f, const GridPath& g, const BesovParams& params,
                    BesovForm form = BesovForm::dyadic);

/// prof[k] for shifts k that are multiples of `stride` (other entries are 0).
std::vector<double> field_shift_profile(const TwoParamField& A, double p, std::size_t kmax, std::size_t stride = 1);

/// (sum over dyadic tau of log 2 * (Omega_p(A, tau) / weight(tau))^q)^(1/q), only shifts divisible by stride.
double two_param_norm_weighted(const TwoParamField& A, const std::function<double(double)>& weight, double p,
                               double q, std::size_t stride = 1);
double two_param_norm(const TwoParamField& A, double gamma, double p, double q);
/// Metric of the two-parameter scale applied to A - B (q-power forms when q < 1 or p < 1).
double two_param_metric(const TwoParamField& A, const TwoParamField& B, double gamma, double p, double q);
/// The same metric for a precomputed difference D = A - B.
double two_param_difference_metric(const TwoParamField& D, double gamma, double p, double q);
/// Norm built on sup over theta in {k / 2^J} of || delta2 A_{., .+theta h, .+h} ||_{L^p}.
double delta2_norm(const TwoParamField& A, double gamma, double p, double q, int J = 4);

double holder_seminorm(const GridPath& f, double beta);
double holder_norm(const TwoParamField& A, double gamma);

struct VariationResult {
    double value;
    std::vector<std::size_t> partition;
};

VariationResult pvariation_partition(const GridPath& f, double p);
double pvariation(const GridPath& f, double p);
double oscillation_variation(const GridPath& f, double p);

double campanato_ratio(const GridPath& f, double beta);

struct InequalityReport {
    double lhs;
    double rhs;
    double ratio;
};

enum class EmbeddingTarget { holder, variation };

/// holder: Holder-(alpha - 1/p) seminorm against the dyadic Besov seminorm.
/// variation: B^{1/p}_{p,inf} seminorm against the p-variation.
InequalityReport check_embedding(const GridPath& f, const BesovParams& source, EmbeddingTarget target);

InequalityReport interpolation_check(const TwoParamField& A, double alpha, double gamma, double p, double r, double q,
                                     double delta);

}  // namespace besov_rough
