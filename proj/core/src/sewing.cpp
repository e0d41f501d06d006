#include "besov_rough/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "besov_rough/errors.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/stats.hpp"

namespace besov_rough {

namespace {
constexpr double kEq = 1e-12;
}

void check_sewing_regime(const SewingInput& in) {
    const double crit = std::max(1.0, 1.0 / in.p2);
    if (!(in.p2 > 0.0) || !(in.q2 > 0.0)) throw RegimeError("sewing requires p2, q2 > 0");
    if (in.endpoint) {
        if (std::abs(in.gamma - crit) > kEq)
            throw RegimeError("endpoint sewing requires gamma = max(1, 1/p2) = " + std::to_string(crit));
        if (in.q2 > std::min(1.0, in.p2) + kEq)
            throw RegimeError("endpoint sewing requires q2 <= min(1, p2)");
        if (in.modulus.r < in.q2 - kEq) throw RegimeError("endpoint modulus index r must be >= q2");
    } else if (!(in.gamma > crit + kEq)) {
        throw RegimeError("sewing requires gamma > max(1, 1/p2) = " + std::to_string(crit) + ", got gamma = " +
                          std::to_string(in.gamma));
    }
}

TwoParamField dyadic_riemann(const TwoParamField& A, int n) {
    const std::size_t parts = std::size_t{1} << n;
    const std::size_t m = A.dim();
    return TwoParamField::from_function(
        A.grid(), m,
        [A, parts, m](std::size_t s, std::size_t t, double* out) {
            if ((t - s) % parts != 0) throw std::invalid_argument("pair not admissible for this dyadic partition");
            std::fill(out, out + m, 0.0);
            if (t == s) return;
            const std::size_t d = (t - s) / parts;
            std::vector<double> buf(m);
            for (std::size_t l = 0; l < parts; ++l) {
                A.get(s + l * d, s + (l + 1) * d, buf.data());
                for (std::size_t c = 0; c < m; ++c) out[c] += buf[c];
            }
        },
        TwoParamField::Mode::lazy);
}

TwoParamField partition_riemann(const TwoParamField& A, std::vector<std::size_t> breaks) {
    std::sort(breaks.begin(), breaks.end());
    const std::size_t m = A.dim();
    return TwoParamField::from_function(
        A.grid(), m,
        [A, breaks, m](std::size_t s, std::size_t t, double* out) {
            std::fill(out, out + m, 0.0);
            std::vector<double> buf(m);
            std::size_t a = s;
            auto it = std::upper_bound(breaks.begin(), breaks.end(), s);
            for (; it != breaks.end() && *it < t; ++it) {
                A.get(a, *it, buf.data());
                for (std::size_t c = 0; c < m; ++c) out[c] += buf[c];
                a = *it;
            }
            if (a < t) {
                A.get(a, t, buf.data());
                for (std::size_t c = 0; c < m; ++c) out[c] += buf[c];
            }
        },
        TwoParamField::Mode::lazy);
}

GridPath sew_integral(const TwoParamField& A) {
    const std::size_t m = A.dim();
    GridPath I(A.grid(), m);
    std::vector<double> buf(m);
    for (std::size_t i = 0; i + 1 < I.size(); ++i) {
        A.get(i, i + 1, buf.data());
        for (std::size_t c = 0; c < m; ++c) I(i + 1, c) = I(i, c) + buf[c];
    }
    return I;
}

TwoParamField sew_remainder(const GridPath& integral, const TwoParamField& A, TwoParamField::Mode mode) {
    const std::size_t m = A.dim();
    auto vals = std::make_shared<const std::vector<double>>(integral.values());
    return TwoParamField::from_function(A.grid(), m, [vals, A, m](std::size_t i, std::size_t j, double* out) {
        A.get(i, j, out);
        const double* a = vals->data() + i * m;
        const double* b = vals->data() + j * m;
        for (std::size_t c = 0; c < m; ++c) out[c] = (b[c] - a[c]) - out[c];
    }, mode);
}

TwoParamField successive_difference(const TwoParamField& A, int n) {
    const std::size_t parts = std::size_t{1} << n;
    const std::size_t m = A.dim();
    return TwoParamField::from_function(
        A.grid(), m,
        [A, parts, m](std::size_t s, std::size_t t, double* out) {
            if ((t - s) % (2 * parts) != 0) throw std::invalid_argument("pair not admissible for this refinement");
            std::fill(out, out + m, 0.0);
            if (t == s) return;
            const std::size_t d = (t - s) / parts;
            thread_local std::vector<double> buf, scratch;
            buf.resize(m);
            scratch.resize(m);
            for (std::size_t l = 0; l < parts; ++l) {
                const std::size_t a = s + l * d;
                delta2(A, a, a + d / 2, a + d, buf.data(), scratch.data());
                for (std::size_t c = 0; c < m; ++c) out[c] -= buf[c];
            }
        },
        TwoParamField::Mode::lazy);
}

SewingResult sew(const SewingInput& in) {
    check_sewing_regime(in);
    const TwoParamField& A = in.germ;
    SewingResult res;
    res.integral = sew_integral(A);
    res.remainder = sew_remainder(res.integral, A, TwoParamField::Mode::lazy);

    std::function<double(double)> weight;
    if (in.endpoint) {
        EndpointModulus mod = in.modulus;
        mod.p2 = in.p2;
        weight = [mod](double h) { return mod.omega(h); };
    } else {
        const double g = in.gamma;
        weight = [g](double h) { return std::pow(h, g); };
    }
    const double qn = in.endpoint ? in.modulus.r : in.q2;
    if (in.remainder_norm) res.remainder_norm = two_param_norm_weighted(res.remainder, weight, in.p2, qn);
    if (in.diagnostics) {
        const int L = A.grid().level();
        for (int n = 0; n < L; ++n) {
            const TwoParamField D = successive_difference(A, n);
            res.levels.push_back({n, two_param_norm_weighted(D, weight, in.p2, qn, std::size_t{2} << n)});
        }
    }
    return res;
}

RateCertificate rate_certificate(const SewingResult& result, double gamma, double p2, int n_lo, int n_hi) {
    const double expected = -(gamma - std::max(1.0, 1.0 / p2));
    std::vector<double> x, y;
    bool any = false;
    for (const auto& lv : result.levels) {
        if (lv.n < n_lo || lv.n > n_hi) continue;
        if (lv.diff_norm > 0.0) {
            any = true;
            x.push_back(lv.n);
            y.push_back(std::log2(lv.diff_norm));
        }
    }
    if (!any) return {-kInf, expected, 1.0};
    if (x.size() < 2) throw std::invalid_argument("rate certificate needs two nonzero levels");
    const LinearFit fit = linear_fit(x, y);
    return {fit.slope, expected, fit.r2};
}

OscillationProfile small_oscillation_check(const TwoParamField& R, double p2) {
    OscillationProfile out{{}, {}, true};
    const UniformGrid& g = R.grid();
    if (g.level() == 0) return out;
    const auto prof = field_shift_profile(R, p2, g.cells() / 2);
    const double e = std::max(1.0, 1.0 / p2);
    // Running sup from the finest shift up, reported coarse to fine.
    for (int n = 1; n <= g.level(); ++n) {
        const std::size_t K = std::size_t{1} << (g.level() - n);
        double run = 0.0;
        for (std::size_t k = 1; k <= K; ++k) run = std::max(run, prof[k]);
        const double tau = static_cast<double>(K) * g.mesh();
        out.tau.push_back(tau);
        out.value.push_back(run / std::pow(tau, e));
    }
    for (std::size_t i = 1; i < out.value.size(); ++i)
        if (out.value[i] > out.value[i - 1] * (1.0 + 1e-9) + 1e-300) out.decreasing = false;
    return out;
}

DeltaHolderFit delta_holder_fit(const TwoParamField& A, double gamma, double p2, std::size_t max_triples) {
    const double e = gamma - 1.0 / p2;
    const std::size_t n = A.grid().size();
    const double mesh = A.grid().mesh();
    struct Triple {
        double lo, hi, v;
    };
    std::vector<Triple> triples;
    const std::size_t total = n * (n - 1) * (n - 2) / 6;
    const std::size_t m = A.dim();
    std::vector<double> out(m), scratch(m);
    auto add = [&](std::size_t s, std::size_t u, std::size_t t) {
        delta2(A, s, u, t, out.data(), scratch.data());
        double v = 0.0;
        for (double x : out) v += x * x;
        const double a = static_cast<double>(u - s) * mesh, b = static_cast<double>(t - u) * mesh;
        triples.push_back({std::min(a, b), std::max(a, b), std::sqrt(v)});
    };
    if (total <= max_triples) {
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = s + 1; u < n; ++u)
                for (std::size_t t = u + 1; t < n; ++t) add(s, u, t);
    } else {
        Rng rng(0x5eed);
        for (std::size_t k = 0; k < max_triples; ++k) {
            std::size_t a = rng.below(n), b = rng.below(n), c = rng.below(n);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            if (a == b || b == c) continue;
            add(a, b, c);
        }
    }
    DeltaHolderFit best{0.25, kInf};
    for (int k = 1; k < 16; ++k) {
        const double theta = k / 32.0;
        double M = 0.0;
        for (const auto& tr : triples)
            M = std::max(M, tr.v / (std::pow(tr.lo, theta * e) * std::pow(tr.hi, (1.0 - theta) * e)));
        if (M < best.M) best = {theta, M};
    }
    return best;
}

}  // namespace besov_rough
