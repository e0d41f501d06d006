#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "besov_rough/grid.hpp"
#include "besov_rough/rough.hpp"

namespace besov_rough {

enum class MartingaleKind { gaussian, rademacher, stopped_walk };

MartingaleKind parse_martingale_kind(const std::string& name);
std::string to_string(MartingaleKind kind);

/// Scalar martingale g_0 = 0, ..., g_J on the uniform grid of [0, 1] with J = 2^L cells.
struct DiscreteMartingale {
    GridPath g;
    MartingaleKind kind = MartingaleKind::gaussian;
    std::uint64_t seed = 0;

    std::size_t length() const { return g.grid().cells(); }
    double increment(std::size_t j) const { return g(j) - g(j - 1); }

    /// gaussian: N(0, 1/J) steps; rademacher: +-J^{-1/2}; stopped_walk: +-J^{-1/2} until |g| >= barrier.
    static DiscreteMartingale generate(MartingaleKind kind, std::size_t length, std::uint64_t seed,
                                       double barrier = 0.5);
};

/// Pi_st = sum_{s <= j < t} F_{s,j} (g_{j+1} - g_j), evaluated eagerly for all pairs. F is scalar.
TwoParamField paraproduct(const TwoParamField& F, const DiscreteMartingale& g);
/// Pi(delta f, g) in closed form: (G_t - G_s) - f_s (g_t - g_s) with G_t = sum_{j < t} f_j dg_{j+1}.
TwoParamField paraproduct_delta(const GridPath& f, const DiscreteMartingale& g);
/// S_st = (sum_{s < j <= t} dg_j^2)^{1/2}.
TwoParamField square_function(const DiscreteMartingale& g);

/// One row of a Monte Carlo results table.
struct McRow {
    std::string key;  // "n" or "length"
    double key_value;
    std::string statistic;
    double estimate;
    double stderr_;
    std::size_t samples;
};

struct YnpLevel {
    int n;
    double mean;
    double variance;
    double stderr_;
    /// Independent estimate of the same mean.
    double oracle_mean;
    double oracle_stderr;
};

struct YnpReport {
    std::vector<YnpLevel> levels;
    double mean;      // across levels and samples
    double variance;  // of the per-level means
    /// log2-regression of the per-level sample variance against n.
    double variance_slope;
    std::size_t samples = 0;
    std::size_t oracle_samples = 0;
    std::vector<McRow> rows() const;
};

struct BmStatisticConfig {
    double p = 4.0;
    std::vector<int> ns{4, 6, 8};
    int level = 12;
    std::size_t samples = 2000;
    std::size_t oracle_samples = 20000;
    std::uint64_t seed = 1;
    int dim = 2;
    LiftFlavor flavor = LiftFlavor::ito;
};

/// Y_np^p = 2^{np/2} sum_{r < C - K} d(W_r, W_{r+K})^p mesh with K = C 2^{-n}, d the homogeneous distance.
/// The oracle draws one-step lifts over K substeps and scales their mean by 1 - 2^{-n}.
YnpReport bm_besov_statistic(const BmStatisticConfig& cfg);

/// Single-path statistic for a given lift (p-th power, scaling exponent H).
double ynp_statistic(const RoughPath& X, double p, int n, double hurst);

struct FbmStatisticConfig {
    double hurst = 0.4;
    double p = 4.0;
    std::vector<int> ns{3, 4, 5, 6};
    int level = 10;
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    /// Level 1 for H > 1/2, level 2 (geometric lift of the grid path) for H in (1/3, 1/2].
    int dim = 2;
};

/// Oracle: level 1 uses the exact Gaussian moment E|N(0, I)|^p; level 2 has no closed form (oracle fields are NaN).
YnpReport fbm_besov_statistic(const FbmStatisticConfig& cfg);

struct PprodConfig {
    double gamma0 = 0.45, gamma1 = 0.6;
    double p0 = 8, p1 = 8, q0 = 8, q1 = 8;
    double r0 = 8, r1 = 8;
    /// Optional targets; when positive they must satisfy the Holder relations 1/p = 1/p0 + 1/p1, etc.
    double p = 0, q = 0, r = 0;
    std::vector<std::size_t> lengths{128, 256, 512};
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    MartingaleKind kind = MartingaleKind::gaussian;
    /// f = g instead of an independent martingale.
    bool same = false;
};

struct PprodLength {
    std::size_t length;
    double ratio_median, ratio_p99, ratio_max;
    /// F = 1: ||delta g||_{B^gamma0} / ||S g||_{B^gamma0}.
    double bdg_median, bdg_p99;
    /// L^r(Omega) form: ||LHS||_{L^r} / (||f||_{L^r1} ||Sg||_{L^r0}).
    double moment_ratio;
};

struct PprodReport {
    double gamma, p, q, r;
    std::vector<PprodLength> lengths;
    /// max / min of the 99th percentiles across lengths.
    double ratio_spread;
    double bdg_spread;
    std::size_t samples = 0;
    std::vector<McRow> rows() const;
};

/// Throws RegimeError when gamma1 <= 1/p1 or an exponent relation fails.
PprodReport pprod_bdg_experiment(const PprodConfig& cfg);

}  // namespace besov_rough
