#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "besov_rough/grid.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/sewing.hpp"
#include "besov_rough/vector_field.hpp"

namespace besov_rough {

/// X-controlled path (Y, Y') over R^m for a level-2 rough path X over R^n.
/// Y' has m * n components, index a * n + i = dY^a / dX^i.
class ControlledPath {
public:
    ControlledPath() = default;
    ControlledPath(RoughPath X, GridPath Y, GridPath Yprime,
                   TwoParamField::Mode mode = TwoParamField::Mode::lazy);

    const RoughPath& driver() const { return X_; }
    const GridPath& Y() const { return Y_; }
    const GridPath& Yprime() const { return Yp_; }
    std::size_t dim() const { return Y_.dim(); }
    const UniformGrid& grid() const { return Y_.grid(); }

    /// R^Y_st = delta Y_st - Y'_s delta X_st.
    const TwoParamField& remainder() const { return R_; }
    TwoParamField recompute_remainder(TwoParamField::Mode mode = TwoParamField::Mode::automatic) const;

    ControlledPath slice(std::size_t start, std::size_t len) const;

private:
    RoughPath X_;
    GridPath Y_, Yp_;
    TwoParamField R_;
};

/// [Y']_{B^alpha_pq} + ||R^Y||_{B^{2 alpha}_{p/2, q/2}} at the driver's parameters.
double controlled_norm(const ControlledPath& Y);
/// d_B(Y', Z') + d_B(R^Y, R^Z); the paths may be controlled by different drivers on the same grid.
double controlled_distance(const ControlledPath& Y, const ControlledPath& Z);

struct RemainderBounds {
    double beta;
    /// ||R^Y||_{C^{beta - 2/p}} against ||R^Y||_{B^beta_{p/2,q/2}} + [Y'][X].
    InequalityReport holder;
    /// [Y] against |Y'_0|[X] + (T^{beta-alpha-1/p} v T^{alpha-1/p}) ([Y'][X] + ||R^Y||_{B^beta}).
    InequalityReport control;
};

/// Requires alpha + 1/p < beta <= 2 alpha.
RemainderBounds remainder_bounds_check(const ControlledPath& Y, double beta);

struct RoughIntegral {
    /// Z with Z' = Y (the integrand's values, copied bit-exactly).
    ControlledPath Z;
    /// Norm of delta Z - Y delta X - Y' XX in B^{3 alpha}_{p/3,q/3}, or B^1_{p/3,inf} at alpha = 1/3.
    double remainder_norm = 0.0;
    /// Set at alpha = 1/3: the vanishing-oscillation profile of that remainder.
    std::optional<OscillationProfile> endpoint_profile;
};

/// Integrand Y over R^{d x n} (component a * n + j) with Y' over R^{d x n x n} (component (a * n + j) * n + i).
/// Sews A_st = Y_s delta X_st + Y'_s XX_st; the result is controlled over R^d.
RoughIntegral rough_integral(const ControlledPath& Y, bool with_remainder_norm = true);

/// (F(Y), DF(Y) Y'); F maps R^m to R^out with out = rows * cols.
ControlledPath compose_controlled(const VectorField& F, const ControlledPath& Y);

/// controlled_norm(F(Y)) against ||F||_{C^2} (1 + [X]) max(u, u^2), u = |Y'_0| + controlled_norm(Y);
/// ||F||_{C^2} is sampled on a cloud around Y.
InequalityReport compose_bound_check(const VectorField& F, const ControlledPath& Y);

/// Augments a level-2 X over R^n with time as coordinate n; the cross entries are left-point t-integrals.
RoughPath with_time_coordinate(const RoughPath& X);

struct RdeOptions {
    double tol = 1e-9;
    int max_iterations = 100;
    int max_halvings = 12;
    double contraction = 0.5;
    /// Davie slope regression range in h.
    double davie_h_lo = 0x1p-10;
    double davie_h_hi = 0x1p-4;
    bool with_report = true;
};

struct DavieReport {
    TwoParamField D;
    double norm = 0.0;
    double slope = 0.0;
    double slope_r2 = 0.0;
    std::vector<double> h;
    std::vector<double> sup;
    /// alpha = 1/3 only: trend of the vanishing profile (a finite grid cannot certify the limit).
    std::optional<OscillationProfile> endpoint_profile;
};

struct RdeResult {
    ControlledPath solution;
    int iterations = 0;
    std::vector<std::size_t> boundaries;
    std::vector<int> block_iterations;
    double controlled_norm = 0.0;
    /// |Y_0| + |Y'_0| + controlled norm.
    double bound_M = 0.0;
    /// omega(T0) / T0^{2 alpha + 1/p} for the shortest accepted block length T0, omega(h) = h^{3 alpha}
    /// (h l_{q/3}(h) at alpha = 1/3); monitored only.
    double smallness = 0.0;
    std::optional<DavieReport> davie;
};

/// Checks the field class for the driver regime; throws RegimeError on failure.
void check_rde_field(const VectorField& F, const BesovParams& params);

/// Picard iteration of T(Y, Y') = (y + int f(Y) dX, f(Y)) on adaptively halved dyadic blocks.
RdeResult rde_solve(const VectorField& F, const RoughPath& X, const std::vector<double>& y0,
                    const RdeOptions& opts = {});

/// D_st = delta Y_st - f(Y_s) delta X_st - Df(Y_s) f(Y_s) XX_st, its norm and the log-log slope of
/// sup_{|t-s| = h} |D_st| over dyadic h in [h_lo, h_hi].
DavieReport davie_residual(const ControlledPath& Y, const VectorField& F, double h_lo = 0x1p-10,
                           double h_hi = 0x1p-4);

struct RdeStabilityReport {
    double output_dist;
    double input_dist;
    double ratio;
    /// Whether some beta satisfies max(alpha + 1/p, 1 - alpha) < beta <= 2 alpha.
    bool beta_admissible;
};

RdeStabilityReport rde_stability_probe(const VectorField& F1, const VectorField& F2, const RoughPath& X1,
                                       const RoughPath& X2, const std::vector<double>& y1,
                                       const std::vector<double>& y2, const RdeOptions& opts = {});

}  // namespace besov_rough
