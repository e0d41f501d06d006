#include "besov_rough/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "besov_rough/errors.hpp"
#include "besov_rough/parallel.hpp"

namespace besov_rough {

namespace {

constexpr double kEq = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kEq * std::max(1.0, std::abs(b)); }

double ipow(double x, unsigned n) {
    double r = 1.0;
    while (n) {
        if (n & 1u) r *= x;
        x *= x;
        n >>= 1u;
    }
    return r;
}

double sq_norm(const double* v, std::size_t m) {
    double s = 0.0;
    for (std::size_t c = 0; c < m; ++c) s += v[c] * v[c];
    return s;
}

// Finishes an accumulated sum of |x|^p (or a max when p = inf) into an L^p norm with cell weight `mesh`.
double finish_lp(double acc, double p, double mesh) {
    if (std::isinf(p)) return std::sqrt(acc);
    return std::pow(acc * mesh, 1.0 / p);
}

// Sum or max of q-th powers ("J") of a nonnegative sequence with weights; q = inf returns the max.
double q_sum(const std::vector<double>& terms, double q, double w) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    for (double t : terms) s += w * std::pow(t, q);
    return s;
}

double q_root(double J, double q) { return std::isinf(q) ? J : std::pow(J, 1.0 / q); }

// Dyadic tau_n = T 2^-n as shift counts K_n = 2^(L-n), n = 1..L.
std::vector<std::size_t> dyadic_shifts(const UniformGrid& g) {
    std::vector<std::size_t> ks;
    for (int n = 1; n <= g.level(); ++n) ks.push_back(std::size_t{1} << (g.level() - n));
    return ks;
}

// Running maximum of prof over shifts 1..K evaluated at every dyadic shift.
std::vector<double> dyadic_moduli(const std::vector<double>& prof, const std::vector<std::size_t>& ks) {
    std::vector<double> out(ks.size());
    double run = 0.0;
    std::size_t k = 1;
    for (std::size_t idx = ks.size(); idx-- > 0;) {
        for (; k <= ks[idx]; ++k) run = std::max(run, prof[k]);
        out[idx] = run;
    }
    return out;
}

}  // namespace

double pow_from_square(double s, double p) {
    const double half = p / 2.0;
    if (half == std::floor(half) && half >= 1.0 && half <= 64.0) return ipow(s, static_cast<unsigned>(half));
    if (p == 1.0) return std::sqrt(s);
    return std::pow(s, half);
}

void BesovParams::validate() const {
    if (!(alpha > 0.0)) throw RegimeError("alpha must be positive");
    if (!(p > 0.0) || !(q > 0.0)) throw RegimeError("p and q must be positive");
    const double cap = std::max(1.0, 1.0 / p);
    if (alpha > cap + kEq)
        throw RegimeError("alpha = " + std::to_string(alpha) + " exceeds max(1, 1/p) = " + std::to_string(cap) +
                          "; only constant paths have finite seminorm");
}

bool BesovParams::levelN_ok(int N) const {
    const double lo = 1.0 / (N + 1);
    if (alpha < lo - kEq || alpha >= 1.0) return false;
    if (near(alpha, lo) && q > N + 1) return false;
    return 1.0 / alpha < p;
}

bool BesovParams::young_ok() const { return levelN_ok(1); }
bool BesovParams::level2_ok() const { return levelN_ok(2); }

double EndpointModulus::ell(double h) const {
    if (std::isinf(r)) return 1.0;
    return std::pow(std::abs(std::log(std::min(h, 0.5))), 1.0 / r + epsilon);
}

double EndpointModulus::omega(double h) const { return std::pow(h, std::max(1.0, 1.0 / p2)) * ell(h); }

double lp_norm(const GridPath& f, double p) {
    const std::size_t m = f.dim();
    const std::size_t last = std::isinf(p) ? f.grid().cells() : f.grid().cells() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i <= last; ++i) {
        const double s = sq_norm(f.row(i).data(), m);
        acc = std::isinf(p) ? std::max(acc, s) : acc + pow_from_square(s, p);
    }
    return finish_lp(acc, p, f.grid().mesh());
}

std::vector<double> shift_profile(const GridPath& f, double p, std::size_t kmax) {
    const std::size_t C = f.grid().cells();
    const std::size_t m = f.dim();
    kmax = std::min(kmax, C);
    std::vector<double> prof(kmax + 1, 0.0);
    const double* v = f.values().data();
    const bool sup = std::isinf(p);
    parallel_for(kmax, [&](std::size_t idx) {
        const std::size_t k = idx + 1;
        const std::size_t last = sup ? C - k : C - k - (k < C ? 1 : 0);
        if (!sup && k == C) return;
        double acc = 0.0;
        for (std::size_t r = 0; r <= last; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                const double d = v[(r + k) * m + c] - v[r * m + c];
                s += d * d;
            }
            acc = sup ? std::max(acc, s) : acc + pow_from_square(s, p);
        }
        prof[k] = finish_lp(acc, p, f.grid().mesh());
    });
    return prof;
}

double lp_modulus(const GridPath& f, double p, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("lp_modulus requires tau > 0");
    const double mesh = f.grid().mesh();
    const auto K = std::min<std::size_t>(f.grid().cells(), static_cast<std::size_t>(std::floor(tau / mesh + 1e-9)));
    const auto prof = shift_profile(f, p, K);
    double out = 0.0;
    for (std::size_t k = 1; k <= K; ++k) out = std::max(out, prof[k]);
    return out;
}

BesovReport besov_report(const GridPath& f, const BesovParams& params, BesovForm form) {
    params.validate();
    const UniformGrid& g = f.grid();
    const auto ks = dyadic_shifts(g);
    BesovReport rep{0.0, {}};
    if (ks.empty()) return rep;
    std::vector<double> terms(ks.size());
    if (form == BesovForm::dyadic) {
        // Only the dyadic shifts are needed.
        const std::size_t m = f.dim();
        const double* v = f.values().data();
        const bool sup = std::isinf(params.p);
        for (std::size_t idx = 0; idx < ks.size(); ++idx) {
            const std::size_t k = ks[idx];
            const std::size_t last = sup ? g.cells() - k : g.cells() - k - 1;
            double acc = 0.0;
            for (std::size_t r = 0; r <= last; ++r) {
                double s = 0.0;
                for (std::size_t c = 0; c < m; ++c) {
                    const double d = v[(r + k) * m + c] - v[r * m + c];
                    s += d * d;
                }
                acc = sup ? std::max(acc, s) : acc + pow_from_square(s, params.p);
            }
            const double lp = finish_lp(acc, params.p, g.mesh());
            const double h = static_cast<double>(k) * g.mesh();
            rep.levels.push_back({static_cast<int>(idx) + 1, h, lp});
            terms[idx] = std::pow(1.0 / h, params.alpha) * lp;
        }
        rep.seminorm = q_root(q_sum(terms, params.q, 1.0), params.q);
    } else {
        const auto prof = shift_profile(f, params.p, ks.front());
        const auto mods = dyadic_moduli(prof, ks);
        for (std::size_t idx = 0; idx < ks.size(); ++idx) {
            const double h = static_cast<double>(ks[idx]) * g.mesh();
            rep.levels.push_back({static_cast<int>(idx) + 1, h, prof[ks[idx]]});
            terms[idx] = mods[idx] / std::pow(h, params.alpha);
        }
        rep.seminorm = q_root(q_sum(terms, params.q, std::numbers::ln2), params.q);
    }
    return rep;
}

double besov_seminorm(const GridPath& f, const BesovParams& params, BesovForm form) {
    return besov_report(f, params, form).seminorm;
}

double besov_metric(const GridPath& f, const GridPath& g, const BesovParams& params, BesovForm form) {
    const GridPath d = f - g;
    const double base = lp_norm(d, params.p);
    const double J = [&] {
        const double s = besov_seminorm(d, params, form);
        return std::isinf(params.q) ? s : std::pow(s, params.q);
    }();
    const double p = params.p, q = params.q;
    if (p >= 1.0 && q >= 1.0) return base + q_root(J, q);
    if (q < 1.0 && q <= p && p < 1.0) return std::pow(base, p) + J;
    if (q < 1.0 && p >= 1.0) return base + J;
    // p < 1 < q or p < q < 1.
    const double Jpq = std::isinf(q) ? std::pow(J, p) : std::pow(J, p / q);
    return std::pow(base, p) + Jpq;
}

std::vector<double> field_shift_profile(const TwoParamField& A, double p, std::size_t kmax, std::size_t stride) {
    const UniformGrid& g = A.grid();
    const std::size_t C = g.cells();
    const std::size_t m = A.dim();
    kmax = std::min(kmax, C);
    std::vector<double> prof(kmax + 1, 0.0);
    const bool sup = std::isinf(p);
    const std::size_t count = kmax / stride;
    parallel_for(count, [&](std::size_t idx) {
        const std::size_t k = (idx + 1) * stride;
        if (!sup && k == C) return;
        const std::size_t last = sup ? C - k : C - k - 1;
        std::vector<double> buf(m);
        double acc = 0.0;
        for (std::size_t r = 0; r <= last; ++r) {
            A.get(r, r + k, buf.data());
            const double s = sq_norm(buf.data(), m);
            acc = sup ? std::max(acc, s) : acc + pow_from_square(s, p);
        }
        prof[k] = finish_lp(acc, p, g.mesh());
    });
    return prof;
}

namespace {

// J = sum of log2 * (Omega / weight)^q over dyadic tau (max when q = inf).
double two_param_J(const std::vector<double>& prof, const UniformGrid& g,
                   const std::function<double(double)>& weight, double q) {
    const auto ks = dyadic_shifts(g);
    if (ks.empty()) return 0.0;
    const auto mods = dyadic_moduli(prof, ks);
    std::vector<double> terms(ks.size());
    for (std::size_t idx = 0; idx < ks.size(); ++idx)
        terms[idx] = mods[idx] / weight(static_cast<double>(ks[idx]) * g.mesh());
    return q_sum(terms, q, std::numbers::ln2);
}

}  // namespace

double two_param_norm_weighted(const TwoParamField& A, const std::function<double(double)>& weight, double p,
                               double q, std::size_t stride) {
    if (A.grid().level() == 0) return 0.0;
    const auto prof = field_shift_profile(A, p, A.grid().cells() / 2, stride);
    return q_root(two_param_J(prof, A.grid(), weight, q), q);
}

double two_param_norm(const TwoParamField& A, double gamma, double p, double q) {
    if (!(gamma > 0.0)) throw RegimeError("two-parameter regularity must be positive");
    return two_param_norm_weighted(A, [gamma](double t) { return std::pow(t, gamma); }, p, q);
}

double two_param_difference_metric(const TwoParamField& D, double gamma, double p, double q) {
    if (!(gamma > 0.0)) throw RegimeError("two-parameter regularity must be positive");
    if (D.grid().level() == 0) return 0.0;
    const auto prof = field_shift_profile(D, p, D.grid().cells() / 2);
    const double J = two_param_J(prof, D.grid(), [gamma](double t) { return std::pow(t, gamma); }, q);
    if (p >= 1.0 && q >= 1.0) return q_root(J, q);
    if (q < 1.0 && q <= p) return J;
    return std::isinf(q) ? std::pow(J, p) : std::pow(J, p / q);
}

double two_param_metric(const TwoParamField& A, const TwoParamField& B, double gamma, double p, double q) {
    return two_param_difference_metric(A - B, gamma, p, q);
}

double delta2_norm(const TwoParamField& A, double gamma, double p, double q, int J) {
    if (!(gamma > 0.0)) throw RegimeError("two-parameter regularity must be positive");
    const UniformGrid& g = A.grid();
    if (g.level() == 0) return 0.0;
    const std::size_t C = g.cells();
    const std::size_t kmax = C / 2;
    const std::size_t m = A.dim();
    const bool sup = std::isinf(p);
    const std::size_t steps = std::size_t{1} << J;
    std::vector<double> prof(kmax + 1, 0.0);
    parallel_for(kmax, [&](std::size_t idx) {
        const std::size_t k = idx + 1;
        std::vector<double> out(m), scratch(m);
        std::vector<std::size_t> us;
        for (std::size_t j = 0; j <= steps; ++j) us.push_back(j * k / steps);
        us.erase(std::unique(us.begin(), us.end()), us.end());
        const std::size_t last = sup ? C - k : C - k - 1;
        double best = 0.0;
        for (std::size_t u : us) {
            double acc = 0.0;
            for (std::size_t r = 0; r <= last; ++r) {
                delta2(A, r, r + u, r + k, out.data(), scratch.data());
                const double s = sq_norm(out.data(), m);
                acc = sup ? std::max(acc, s) : acc + pow_from_square(s, p);
            }
            best = std::max(best, finish_lp(acc, p, g.mesh()));
        }
        prof[k] = best;
    });
    return q_root(two_param_J(prof, g, [gamma](double t) { return std::pow(t, gamma); }, q), q);
}

double holder_seminorm(const GridPath& f, double beta) {
    const std::size_t n = f.size(), m = f.dim();
    const double mesh = f.grid().mesh();
    double best = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double w = std::pow(static_cast<double>(k) * mesh, -beta);
        double mx = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                const double d = f(i + k, c) - f(i, c);
                s += d * d;
            }
            mx = std::max(mx, s);
        }
        best = std::max(best, std::sqrt(mx) * w);
    }
    return best;
}

double holder_norm(const TwoParamField& A, double gamma) {
    const std::size_t n = A.grid().size(), m = A.dim();
    const double mesh = A.grid().mesh();
    std::vector<double> buf(m);
    double best = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double w = std::pow(static_cast<double>(k) * mesh, -gamma);
        double mx = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            A.get(i, i + k, buf.data());
            mx = std::max(mx, sq_norm(buf.data(), m));
        }
        best = std::max(best, std::sqrt(mx) * w);
    }
    return best;
}

VariationResult pvariation_partition(const GridPath& f, double p) {
    if (!(p >= 1.0)) throw RegimeError("p-variation requires p >= 1");
    const std::size_t n = f.size(), m = f.dim();
    std::vector<double> V(n, 0.0);
    std::vector<std::size_t> prev(n, 0);
    const double* v = f.values().data();
    for (std::size_t j = 1; j < n; ++j) {
        double best = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < j; ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                const double d = v[j * m + c] - v[i * m + c];
                s += d * d;
            }
            const double cand = V[i] + pow_from_square(s, p);
            if (cand > best) {
                best = cand;
                arg = i;
            }
        }
        V[j] = best;
        prev[j] = arg;
    }
    VariationResult res{std::pow(V[n - 1], 1.0 / p), {}};
    for (std::size_t j = n - 1;; j = prev[j]) {
        res.partition.push_back(j);
        if (j == 0) break;
    }
    std::reverse(res.partition.begin(), res.partition.end());
    return res;
}

double pvariation(const GridPath& f, double p) { return pvariation_partition(f, p).value; }

double oscillation_variation(const GridPath& f, double p) {
    if (!(p >= 1.0)) throw RegimeError("oscillation variation requires p >= 1");
    if (f.dim() != 1) throw std::invalid_argument("oscillation variation is defined for scalar paths");
    const std::size_t n = f.size();
    std::vector<double> V(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        double hi = f(j), lo = f(j), best = -1.0;
        for (std::size_t i = j; i-- > 0;) {
            hi = std::max(hi, f(i));
            lo = std::min(lo, f(i));
            const double half = 0.5 * (hi - lo);
            best = std::max(best, V[i] + pow_from_square(half * half, p));
        }
        V[j] = best;
    }
    return std::pow(V[n - 1], 1.0 / p);
}

double campanato_ratio(const GridPath& f, double beta) {
    const UniformGrid& g = f.grid();
    const std::size_t C = g.cells(), m = f.dim();
    const double mesh = g.mesh();
    double best = 0.0;
    for (int n = 1; n < g.level(); ++n) {
        const std::size_t K = std::size_t{1} << (g.level() - n);
        const double r = static_cast<double>(K) * mesh;
        const std::size_t step = std::max<std::size_t>(1, K / 4);
        for (std::size_t c = K; c + K <= C; c += step) {
            double acc = 0.0;
            for (std::size_t s = c - K; s < c + K; ++s)
                for (std::size_t t = c - K; t < c + K; ++t) {
                    double d2 = 0.0;
                    for (std::size_t a = 0; a < m; ++a) {
                        const double d = f(s, a) - f(t, a);
                        d2 += d * d;
                    }
                    acc += std::sqrt(d2);
                }
            acc *= mesh * mesh;
            best = std::max(best, acc / (std::pow(r, beta) * 4.0 * r * r));
        }
    }
    return best;
}

namespace {
InequalityReport make_report(double lhs, double rhs) {
    return {lhs, rhs, (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs};
}
}  // namespace

InequalityReport check_embedding(const GridPath& f, const BesovParams& source, EmbeddingTarget target) {
    if (target == EmbeddingTarget::holder) {
        const double beta = source.alpha - 1.0 / source.p;
        if (!(beta > 0.0)) throw RegimeError("Holder embedding requires alpha > 1/p");
        return make_report(holder_seminorm(f, beta), besov_seminorm(f, source));
    }
    const BesovParams crit{1.0 / source.p, source.p, kInf};
    return make_report(besov_seminorm(f, crit), pvariation(f, source.p));
}

InequalityReport interpolation_check(const TwoParamField& A, double alpha, double gamma, double p, double r, double q,
                                     double delta) {
    if (!(r >= p)) throw RegimeError("interpolation requires r >= p");
    const double theta = p / r;
    const double T = A.grid().horizon();
    const double lhs = two_param_norm(A, alpha, r, q);
    const double power = delta * (1.0 - theta) + gamma * theta - alpha;
    const double rhs = std::pow(T, power) * std::pow(holder_norm(A, delta), 1.0 - theta) *
                       std::pow(two_param_norm(A, gamma, p, q), theta);
    return make_report(lhs, rhs);
}

}  // namespace besov_rough
