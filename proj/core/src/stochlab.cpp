#include "besov_rough/stochlab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "besov_rough/errors.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/parallel.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/stats.hpp"

namespace besov_rough {

MartingaleKind parse_martingale_kind(const std::string& name) {
    if (name == "gaussian") return MartingaleKind::gaussian;
    if (name == "rademacher" || name == "random-sign") return MartingaleKind::rademacher;
    if (name == "stopped-walk" || name == "stopped-random-walk") return MartingaleKind::stopped_walk;
    throw std::invalid_argument("unknown martingale generator: " + name);
}

std::string to_string(MartingaleKind kind) {
    switch (kind) {
        case MartingaleKind::gaussian: return "gaussian";
        case MartingaleKind::rademacher: return "rademacher";
        case MartingaleKind::stopped_walk: return "stopped-walk";
    }
    return "gaussian";
}

namespace {

int log2_exact(std::size_t n, const char* what) {
    if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument(std::string(what) + " must be a power of two");
    return std::countr_zero(n);
}

}  // namespace

DiscreteMartingale DiscreteMartingale::generate(MartingaleKind kind, std::size_t length, std::uint64_t seed,
                                                double barrier) {
    const UniformGrid grid(1.0, log2_exact(length, "martingale length"));
    DiscreteMartingale m{GridPath(grid, 1), kind, seed};
    Rng rng(seed);
    const double step = 1.0 / std::sqrt(static_cast<double>(length));
    bool stopped = false;
    for (std::size_t j = 1; j <= length; ++j) {
        double d = 0.0;
        switch (kind) {
            case MartingaleKind::gaussian: d = step * rng.normal(); break;
            case MartingaleKind::rademacher: d = (rng.next() >> 63) ? step : -step; break;
            case MartingaleKind::stopped_walk:
                if (!stopped) d = (rng.next() >> 63) ? step : -step;
                break;
        }
        m.g(j) = m.g(j - 1) + d;
        if (kind == MartingaleKind::stopped_walk && std::abs(m.g(j)) >= barrier) stopped = true;
    }
    return m;
}

TwoParamField paraproduct(const TwoParamField& F, const DiscreteMartingale& g) {
    if (!(F.grid() == g.g.grid()) || F.dim() != 1) throw std::invalid_argument("paraproduct needs a scalar F on g's grid");
    const std::size_t J = g.length();
    TwoParamField out(g.g.grid(), 1);
    for (std::size_t s = 0; s <= J; ++s) {
        double acc = 0.0;
        *out.entry(s, s) = 0.0;
        for (std::size_t t = s + 1; t <= J; ++t) {
            acc += F.value(s, t - 1) * g.increment(t);
            *out.entry(s, t) = acc;
        }
    }
    return out;
}

TwoParamField paraproduct_delta(const GridPath& f, const DiscreteMartingale& g) {
    if (!(f.grid() == g.g.grid()) || f.dim() != 1) throw std::invalid_argument("paraproduct needs a scalar f on g's grid");
    const std::size_t J = g.length();
    auto G = std::make_shared<std::vector<double>>(J + 1, 0.0);
    for (std::size_t t = 1; t <= J; ++t) (*G)[t] = (*G)[t - 1] + f(t - 1) * g.increment(t);
    auto fv = std::make_shared<const std::vector<double>>(f.values());
    auto gv = std::make_shared<const std::vector<double>>(g.g.values());
    return TwoParamField::from_function(
        f.grid(), 1,
        [G, fv, gv](std::size_t s, std::size_t t, double* out) {
            out[0] = ((*G)[t] - (*G)[s]) - (*fv)[s] * ((*gv)[t] - (*gv)[s]);
        },
        TwoParamField::Mode::lazy);
}

TwoParamField square_function(const DiscreteMartingale& g) {
    const std::size_t J = g.length();
    auto Q = std::make_shared<std::vector<double>>(J + 1, 0.0);
    for (std::size_t t = 1; t <= J; ++t) (*Q)[t] = (*Q)[t - 1] + g.increment(t) * g.increment(t);
    return TwoParamField::from_function(
        g.g.grid(), 1,
        [Q](std::size_t s, std::size_t t, double* out) { out[0] = std::sqrt(std::max(0.0, (*Q)[t] - (*Q)[s])); },
        TwoParamField::Mode::lazy);
}

namespace {

// Homogeneous norm of (1, a, b) at level 2 without allocations.
double level2_homogeneous_norm(const double* a, const double* b, std::size_t n) {
    double sa = 0.0, sb = 0.0, sbi = 0.0;
    for (std::size_t i = 0; i < n; ++i) sa += a[i] * a[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = b[i * n + j];
            const double w = -v + a[i] * a[j];
            sb += v * v;
            sbi += w * w;
        }
    const double la = std::sqrt(sa);
    return 0.5 * (std::max(la, std::sqrt(2.0 * std::sqrt(sb))) + std::max(la, std::sqrt(2.0 * std::sqrt(sbi))));
}

double gaussian_abs_moment(double p, int d) {
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (d + p)) - std::lgamma(0.5 * d));
}

YnpReport summarize(const std::vector<int>& ns, const std::vector<std::vector<double>>& vals,
                    const std::vector<double>& oracle_mean, const std::vector<double>& oracle_se) {
    YnpReport rep;
    std::vector<double> lx, ly, means;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const auto& v = vals[k];
        YnpLevel lv{ns[k], mean(v), v.size() > 1 ? variance(v) : 0.0, v.size() > 1 ? standard_error(v) : 0.0,
                    oracle_mean[k], oracle_se[k]};
        if (lv.variance > 0.0) {
            lx.push_back(ns[k]);
            ly.push_back(std::log2(lv.variance));
        }
        means.push_back(lv.mean);
        rep.levels.push_back(lv);
    }
    rep.mean = mean(means);
    rep.variance = means.size() > 1 ? variance(means) : 0.0;
    rep.variance_slope = lx.size() >= 2 ? linear_fit(lx, ly).slope : std::nan("");
    return rep;
}

}  // namespace

std::vector<McRow> YnpReport::rows() const {
    std::vector<McRow> out;
    for (const auto& lv : levels) {
        const double n = lv.n;
        out.push_back({"n", n, "ynp_mean", lv.mean, lv.stderr_, samples});
        out.push_back({"n", n, "ynp_variance", lv.variance, std::nan(""), samples});
        out.push_back({"n", n, "oracle_mean", lv.oracle_mean, lv.oracle_stderr, oracle_samples});
    }
    return out;
}

double ynp_statistic(const RoughPath& X, double p, int n, double hurst) {
    const UniformGrid& g = X.grid();
    const std::size_t C = g.cells();
    if (n < 0 || n > g.level()) throw RegimeError("statistic level n must not exceed the grid level");
    const std::size_t K = C >> n;
    const std::size_t d = static_cast<std::size_t>(X.base_dim());
    const double h = static_cast<double>(K) * g.mesh();
    double acc = 0.0;
    if (X.depth() <= 2) {
        double a[Tensor::kMaxDim], b[Tensor::kMaxDim * Tensor::kMaxDim];
        for (std::size_t r = 0; r + K < C; ++r) {
            X.level(1).get(r, r + K, a);
            double nrm;
            if (X.depth() == 2) {
                X.level(2).get(r, r + K, b);
                nrm = level2_homogeneous_norm(a, b, d);
            } else {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += a[i] * a[i];
                nrm = std::sqrt(s);
            }
            acc += pow_from_square(nrm * nrm, p);
        }
    } else {
        for (std::size_t r = 0; r + K < C; ++r) {
            const double nrm = homogeneous_norm(X.element(r, r + K));
            acc += pow_from_square(nrm * nrm, p);
        }
    }
    return std::pow(h, -p * hurst) * acc * g.mesh();
}

YnpReport bm_besov_statistic(const BmStatisticConfig& cfg) {
    if (cfg.dim < 1 || cfg.dim > Tensor::kMaxDim) throw std::invalid_argument("Brownian dimension must be 1..4");
    for (int n : cfg.ns)
        if (n < 1 || n > cfg.level) throw RegimeError("statistic level n must lie in 1..grid level");
    const UniformGrid grid(1.0, cfg.level);
    const std::uint64_t stream = stream_seed(cfg.seed, "bm-ynp");
    std::vector<std::vector<double>> vals(cfg.ns.size(), std::vector<double>(cfg.samples));
    parallel_for(cfg.samples, [&](std::size_t i) {
        const RoughPath X = brownian_lift(cfg.dim, grid, sample_seed(stream, i), cfg.flavor, kDefaultLiftParams,
                                          TwoParamField::Mode::lazy);
        for (std::size_t k = 0; k < cfg.ns.size(); ++k) vals[k][i] = ynp_statistic(X, cfg.p, cfg.ns[k], 0.5);
    });
    // Oracle: one-step lifts of a K-step walk on [0, 1].
    const std::uint64_t ostream = stream_seed(cfg.seed, "bm-ynp-oracle");
    const std::size_t dn = static_cast<std::size_t>(cfg.dim);
    std::vector<double> om(cfg.ns.size()), ose(cfg.ns.size());
    for (std::size_t k = 0; k < cfg.ns.size(); ++k) {
        const std::size_t K = grid.cells() >> cfg.ns[k];
        std::vector<double> draws(cfg.oracle_samples);
        parallel_for(cfg.oracle_samples, [&](std::size_t i) {
            Rng rng(sample_seed(ostream, i * 64 + k));
            double w[Tensor::kMaxDim] = {}, b[Tensor::kMaxDim * Tensor::kMaxDim] = {}, dw[Tensor::kMaxDim];
            const double sd = 1.0 / std::sqrt(static_cast<double>(K));
            for (std::size_t s = 0; s < K; ++s) {
                for (std::size_t c = 0; c < dn; ++c) dw[c] = sd * rng.normal();
                for (std::size_t u = 0; u < dn; ++u)
                    for (std::size_t v = 0; v < dn; ++v) b[u * dn + v] += w[u] * dw[v];
                for (std::size_t c = 0; c < dn; ++c) w[c] += dw[c];
            }
            if (cfg.flavor == LiftFlavor::stratonovich)
                for (std::size_t c = 0; c < dn; ++c) b[c * dn + c] += 0.5;
            const double nrm = level2_homogeneous_norm(w, b, dn);
            draws[i] = pow_from_square(nrm * nrm, cfg.p);
        });
        const double scale = 1.0 - std::ldexp(1.0, -cfg.ns[k]);
        om[k] = scale * mean(draws);
        ose[k] = scale * standard_error(draws);
    }
    YnpReport rep = summarize(cfg.ns, vals, om, ose);
    rep.samples = cfg.samples;
    rep.oracle_samples = cfg.oracle_samples;
    return rep;
}

YnpReport fbm_besov_statistic(const FbmStatisticConfig& cfg) {
    const double H = cfg.hurst;
    if (!(H > 1.0 / 3.0 && H < 1.0)) throw RegimeError("fBm statistic supports H in (1/3, 1)");
    for (int n : cfg.ns)
        if (n < 1 || n > cfg.level) throw RegimeError("statistic level n must lie in 1..grid level");
    const UniformGrid grid(1.0, cfg.level);
    const FbmSampler sampler(H, grid);
    const int depth = H > 0.5 ? 1 : 2;
    const std::uint64_t stream = stream_seed(cfg.seed, "fbm-ynp");
    std::vector<std::vector<double>> vals(cfg.ns.size(), std::vector<double>(cfg.samples));
    parallel_for(cfg.samples, [&](std::size_t i) {
        const GridPath x = sampler.sample(sample_seed(stream, i), static_cast<std::size_t>(cfg.dim));
        const RoughPath X = canonical_lift(x, depth, LiftFlavor::stratonovich, kDefaultLiftParams,
                                           TwoParamField::Mode::lazy);
        for (std::size_t k = 0; k < cfg.ns.size(); ++k) vals[k][i] = ynp_statistic(X, cfg.p, cfg.ns[k], H);
    });
    std::vector<double> om(cfg.ns.size(), std::nan("")), ose(cfg.ns.size(), std::nan(""));
    if (depth == 1)
        for (std::size_t k = 0; k < cfg.ns.size(); ++k) {
            om[k] = (1.0 - std::ldexp(1.0, -cfg.ns[k])) * gaussian_abs_moment(cfg.p, cfg.dim);
            ose[k] = 0.0;
        }
    YnpReport rep = summarize(cfg.ns, vals, om, ose);
    rep.samples = cfg.samples;
    return rep;
}

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double holder_target(double a, double b, double given, const char* name) {
    const double r = inv(a) + inv(b);
    const double v = r == 0.0 ? kInf : 1.0 / r;
    if (given > 0.0 && std::abs(inv(given) - r) > 1e-12)
        throw RegimeError(std::string("exponent relation violated: 1/") + name + " != 1/" + name + "0 + 1/" + name + "1");
    return v;
}

double lr_moment(const std::vector<double>& v, double r) {
    if (std::isinf(r)) return *std::max_element(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += std::pow(x, r);
    return std::pow(s / static_cast<double>(v.size()), 1.0 / r);
}

}  // namespace

PprodReport pprod_bdg_experiment(const PprodConfig& cfg) {
    if (!(cfg.gamma1 > 1.0 / cfg.p1)) throw RegimeError("paraproduct bound needs gamma1 > 1/p1");
    if (cfg.gamma0 < 0.0) throw RegimeError("gamma0 must be nonnegative");
    PprodReport rep;
    rep.samples = cfg.samples;
    rep.gamma = cfg.gamma0 + cfg.gamma1;
    rep.p = holder_target(cfg.p0, cfg.p1, cfg.p, "p");
    rep.q = holder_target(cfg.q0, cfg.q1, cfg.q, "q");
    rep.r = holder_target(cfg.r0, cfg.r1, cfg.r, "r");
    const BesovParams fparams{cfg.gamma1, cfg.p1, cfg.q1};
    fparams.validate();
    std::vector<double> p99s, bdg99s;
    for (std::size_t J : cfg.lengths) {
        log2_exact(J, "length");
        const std::uint64_t stream = stream_seed(cfg.seed, "pprod-bdg/" + std::to_string(J));
        std::vector<double> ratio(cfg.samples), bdg(cfg.samples), lhs(cfg.samples), fn(cfg.samples),
            sn(cfg.samples);
        parallel_for(cfg.samples, [&](std::size_t i) {
            const DiscreteMartingale g = DiscreteMartingale::generate(cfg.kind, J, sample_seed(stream, 2 * i));
            const DiscreteMartingale f =
                cfg.same ? g : DiscreteMartingale::generate(cfg.kind, J, sample_seed(stream, 2 * i + 1));
            const TwoParamField S = square_function(g);
            const double s0 = two_param_norm(S, cfg.gamma0, cfg.p0, cfg.q0);
            const double l = two_param_norm(paraproduct_delta(f.g, g), rep.gamma, rep.p, rep.q);
            const double fb = besov_seminorm(f.g, fparams);
            lhs[i] = l;
            fn[i] = fb;
            sn[i] = s0;
            ratio[i] = (l == 0.0) ? 0.0 : l / (fb * s0);
            const double dg = two_param_norm(delta(g.g, TwoParamField::Mode::lazy), cfg.gamma0, cfg.p0, cfg.q0);
            bdg[i] = (dg == 0.0) ? 0.0 : dg / s0;
        });
        PprodLength row{J,
                        median(ratio),
                        quantile(ratio, 0.99),
                        *std::max_element(ratio.begin(), ratio.end()),
                        median(bdg),
                        quantile(bdg, 0.99),
                        0.0};
        const double den = lr_moment(fn, cfg.r1) * lr_moment(sn, cfg.r0);
        row.moment_ratio = den == 0.0 ? 0.0 : lr_moment(lhs, rep.r) / den;
        p99s.push_back(row.ratio_p99);
        bdg99s.push_back(row.bdg_p99);
        rep.lengths.push_back(row);
    }
    auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *lo > 0.0 ? *hi / *lo : kInf;
    };
    rep.ratio_spread = spread(p99s);
    rep.bdg_spread = spread(bdg99s);
    return rep;
}

std::vector<McRow> PprodReport::rows() const {
    std::vector<McRow> out;
    for (const auto& l : lengths) {
        const double k = static_cast<double>(l.length);
        out.push_back({"length", k, "ratio_median", l.ratio_median, std::nan(""), samples});
        out.push_back({"length", k, "ratio_p99", l.ratio_p99, std::nan(""), samples});
        out.push_back({"length", k, "ratio_max", l.ratio_max, std::nan(""), samples});
        out.push_back({"length", k, "bdg_median", l.bdg_median, std::nan(""), samples});
        out.push_back({"length", k, "bdg_p99", l.bdg_p99, std::nan(""), samples});
        out.push_back({"length", k, "moment_ratio", l.moment_ratio, std::nan(""), samples});
    }
    return out;
}

}  // namespace besov_rough
