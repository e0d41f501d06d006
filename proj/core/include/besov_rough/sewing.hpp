#pragma once

#include <cstddef>
#include <vector>

#include "besov_rough/grid.hpp"
#include "besov_rough/norms.hpp"

namespace besov_rough {

struct SewingInput {
    TwoParamField germ;
    double gamma = 2.0;
    double p2 = kInf;
    double q2 = kInf;
    /// gamma = max(1, 1/p2) with q2 <= min(1, p2); norms then use the modulus omega_r.
    bool endpoint = false;
    EndpointModulus modulus{};
    bool diagnostics = true;
    bool remainder_norm = true;
};

struct SewingLevel {
    int n;
    double diff_norm;
};

struct SewingResult {
    GridPath integral;
    TwoParamField remainder;
    double remainder_norm = 0.0;
    /// Norm of I_{P_{n+1}} A - I_{P_n} A for n = 0..L-1.
    std::vector<SewingLevel> levels;
};

/// Throws RegimeError naming the failed hypothesis.
void check_sewing_regime(const SewingInput& in);

/// Riemann sum of A over the partition of [s, t] into 2^n equal pieces, defined where 2^n divides t - s.
TwoParamField dyadic_riemann(const TwoParamField& A, int n);

/// Riemann sum over {s} + (breaks inside (s, t)) + {t}; breaks are sorted grid indices.
TwoParamField partition_riemann(const TwoParamField& A, std::vector<std::size_t> breaks);

/// I_t = sum of A over the grid cells in [0, t].
GridPath sew_integral(const TwoParamField& A);
/// R = delta I - A.
TwoParamField sew_remainder(const GridPath& integral, const TwoParamField& A,
                            TwoParamField::Mode mode = TwoParamField::Mode::automatic);

/// I_{P_{n+1}} A - I_{P_n} A written as minus the sum of delta2 A over the midpoints of P_n.
TwoParamField successive_difference(const TwoParamField& A, int n);

SewingResult sew(const SewingInput& in);

struct RateCertificate {
    double slope;
    double expected;
    double r2;
};

/// log2-regression of diff norms against n for n in [n_lo, n_hi]; slope is -inf when all diffs vanish.
RateCertificate rate_certificate(const SewingResult& result, double gamma, double p2, int n_lo, int n_hi);

struct OscillationProfile {
    std::vector<double> tau;
    std::vector<double> value;
    bool decreasing;
};

/// sup_{h <= tau} Omega_{p2}(R, h) / tau^max(1, 1/p2) at each dyadic tau, coarse to fine.
OscillationProfile small_oscillation_check(const TwoParamField& R, double p2);

struct DeltaHolderFit {
    double theta;
    double M;
};

/// Smallest M over theta in (0, 1/2) with |delta2 A_sut| <= M min^{theta e} max^{(1-theta) e}, e = gamma - 1/p2.
DeltaHolderFit delta_holder_fit(const TwoParamField& A, double gamma, double p2, std::size_t max_triples = 200000);

}  // namespace besov_rough
