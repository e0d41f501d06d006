#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "besov_rough/grid.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/sewing.hpp"
#include "besov_rough/vector_field.hpp"

namespace besov_rough {

/// Joint regime for integrating f in B^{a0}_{p0 q0} against g in B^{a1}_{p1 q1}.
struct YoungRegime {
    BesovParams f;
    BesovParams g;
    double gamma;
    double p2;
    double q2;
    /// 'a': gamma > max(1, 1/p2); 'b': gamma = max(1, 1/p2) <= 1/q2.
    char case_tag;

    static YoungRegime make(const BesovParams& f, const BesovParams& g);
};

/// A_st = f_s (g_t - g_s) with components a * dim(g) + b.
TwoParamField young_germ(const GridPath& f, const GridPath& g);

struct YoungIntegral {
    GridPath integral;
    /// Norm of delta I - f delta g in B^gamma_{p2,q2} (case b: the omega_inf modulus).
    double remainder_norm;
};

YoungIntegral young_integral(const GridPath& f, const GridPath& g, const YoungRegime& regime,
                             bool with_remainder_norm = true);

struct CompositionReport {
    InequalityReport value;
    std::optional<InequalityReport> difference;
};

/// Both sides of the composition bound for F of class C^delta (and its difference form when Ytilde is given).
CompositionReport besov_composition_check(const VectorField& F, const GridPath& Y, const BesovParams& params,
                                          double delta, const std::optional<GridPath>& Ytilde = std::nullopt);

struct YoungOdeOptions {
    double tol = 1e-10;
    int max_iterations = 100;
    int max_halvings = 12;
    double contraction = 0.5;
};

struct YoungOdeResult {
    GridPath Y;
    int iterations = 0;
    std::vector<std::size_t> boundaries;
    std::vector<int> block_iterations;
    /// A priori bound: Besov seminorm of the solution and of the driver.
    double bound_M = 0.0;
    double driver_seminorm = 0.0;
};

/// Picard iteration Y = y0 + int F(Y) dX on adaptively halved dyadic blocks.
/// The germ carries the second-order term (1/2) DF(Y)F(Y)[dX, dX]; it differs from F(Y_s) dX_st by an
/// increment of order 2 alpha > 1, so the sewn integral is unchanged while the grid error is O(mesh^2).
YoungOdeResult young_ode_solve(const VectorField& F, const GridPath& X, const std::vector<double>& y0,
                               const BesovParams& params, const YoungOdeOptions& opts = {});

struct StabilityReport {
    double output_dist;
    double input_dist;
    double ratio;
};

/// Sample points around trajectories: every node-stride point plus offsets of radius 2 max sup|Y|.
std::vector<std::vector<double>> trajectory_cloud(const std::vector<const GridPath*>& paths,
                                                  std::size_t per_node = 4, std::size_t nodes = 32);

StabilityReport ito_lyons_probe_young(const VectorField& F1, const VectorField& F2, const GridPath& X1,
                                      const GridPath& X2, const std::vector<double>& y1,
                                      const std::vector<double>& y2, const BesovParams& params);

}  // namespace besov_rough
