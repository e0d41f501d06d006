#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "besov_rough/controlled.hpp"
#include "besov_rough/io.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/parallel.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/sewing.hpp"
#include "besov_rough/signals.hpp"
#include "besov_rough/stats.hpp"
#include "besov_rough/stochlab.hpp"
#include "besov_rough/young.hpp"

namespace besov_rough::acceptance {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

class Context {
public:
    Context(const SuiteOptions& opts, std::string name) : opts_(opts), name_(std::move(name)) {}

    double tol(const std::string& key, double fallback) const {
        auto it = opts_.tolerances.find(name_ + "." + key);
        return it == opts_.tolerances.end() ? fallback : it->second;
    }
    std::uint64_t seed(const std::string& stream) const { return stream_seed(opts_.seed, "accept/" + name_ + "/" + stream); }

private:
    const SuiteOptions& opts_;
    std::string name_;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double max_entry_error(const TwoParamField& A, const TwoParamField& B) {
    const std::size_t n = A.grid().size(), d = A.dim();
    std::vector<double> a(d), b(d);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            A.get(i, j, a.data());
            B.get(i, j, b.data());
            for (std::size_t c = 0; c < d; ++c) err = std::max(err, std::abs(a[c] - b[c]));
        }
    return err;
}

double max_entry_error(const RoughPath& X, const RoughPath& Y) {
    double err = 0.0;
    for (int k = 1; k <= X.depth(); ++k) err = std::max(err, max_entry_error(X.level(k), Y.level(k)));
    return err;
}

GridPath smooth_driver(const UniformGrid& grid) {
    return GridPath::sample(grid, 2, [](double t, std::span<double> v) {
        v[0] = std::sin(t);
        v[1] = std::cos(2.0 * t);
    });
}

// ---------------------------------------------------------------------------------------------

Outcome heaviside_critical_norm(const Context& ctx) {
    const double rel = ctx.tol("rel", 0.02);
    const GridPath H = heaviside(UniformGrid(1.0, 12));
    bool ok = true;
    std::string detail;
    for (double p : {2.0, 4.0}) {
        const double v = besov_seminorm(H, {1.0 / p, p, kInf});
        ok = ok && std::abs(v - 1.0) <= rel;
        detail += fmt("p=%g: %.6f  ", p, v);
    }
    return {ok, detail + fmt("(target 1 +- %g)", rel)};
}

Outcome norm_form_equivalence(const Context& ctx) {
    const double max_change = ctx.tol("change", 0.10);
    struct Cell {
        double p, q, lo, hi;
    };
    std::vector<Cell> cells;
    for (double p : {2.0, 4.0})
        for (double q : {2.0, kInf}) {
            const double a0 = 1.0 / p + 0.05, a1 = 0.95, mid = 0.5 * (a0 + a1);
            cells.push_back({p, q, a0, mid});
            cells.push_back({p, q, mid, a1});
        }
    constexpr std::size_t kDraws = 200;
    const std::size_t per_cell = kDraws / cells.size();
    struct Draw {
        std::size_t cell;
        double r10, r12;
    };
    std::vector<Draw> draws(kDraws);
    const std::uint64_t stream = ctx.seed("paths");
    parallel_for(kDraws, [&](std::size_t i) {
        const std::size_t c = i / per_cell;
        Rng rng(sample_seed(stream, i));
        const double alpha = cells[c].lo + (cells[c].hi - cells[c].lo) * rng.uniform();
        const std::size_t knots = 4 + rng.below(28);
        const std::uint64_t path_seed = rng.next();
        const BesovParams P{alpha, cells[c].p, cells[c].q};
        auto ratio = [&](int L) {
            const GridPath f = random_piecewise_linear(UniformGrid(1.0, L), 1, knots, path_seed);
            return besov_seminorm(f, P, BesovForm::dyadic) / besov_seminorm(f, P, BesovForm::integral);
        };
        draws[i] = {c, ratio(10), ratio(12)};
    });
    bool ok = true;
    double worst = 0.0, cmax = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        double c10 = 1.0, c12 = 1.0;
        for (const Draw& d : draws) {
            if (d.cell != c) continue;
            c10 = std::max({c10, d.r10, 1.0 / d.r10});
            c12 = std::max({c12, d.r12, 1.0 / d.r12});
        }
        const double change = std::abs(c12 / c10 - 1.0);
        worst = std::max(worst, change);
        cmax = std::max(cmax, c12);
        ok = ok && std::isfinite(c12) && change < max_change;
    }
    return {ok, fmt("%zu cells x %zu draws: max C = %.4f, max |C12/C10 - 1| = %.4f (limit %g)", cells.size(), per_cell,
                    cmax, worst, max_change)};
}

Outcome heaviside_divergence(const Context& ctx) {
    const double max_resid = ctx.tol("residual", 0.10);
    std::vector<double> Ls{8, 12, 16}, vals;
    for (double L : Ls) vals.push_back(besov_seminorm(heaviside(UniformGrid(1.0, static_cast<int>(L))), {0.5, 2.0, 2.0}));
    // Least-squares c in v = c sqrt(L).
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < Ls.size(); ++i) {
        num += vals[i] * std::sqrt(Ls[i]);
        den += Ls[i];
    }
    const double c = num / den;
    double resid = 0.0;
    for (std::size_t i = 0; i < Ls.size(); ++i) resid = std::max(resid, std::abs(vals[i] - c * std::sqrt(Ls[i])) / vals[i]);
    return {resid < max_resid, fmt("values %.4f %.4f %.4f, fit c = %.4f, max rel residual %.2e (limit %g)", vals[0],
                                   vals[1], vals[2], c, resid, max_resid)};
}

Outcome sawtooth_sharpness(const Context& ctx) {
    const double factor = ctx.tol("besov_factor", 3.0);
    const double slack = ctx.tol("variation_slack", 1e-9);
    const double alpha = 0.5, r = 1.6;
    const UniformGrid grid(1.0, 12);
    const BesovParams P{alpha, 8.0, 8.0};
    const double base = besov_seminorm(sawtooth(grid, alpha, 2), P);
    bool besov_ok = true, var_ok = true;
    std::string detail = fmt("B(f^2) = %.4f;", base);
    for (int n : {2, 4, 6}) {
        const GridPath f = sawtooth(grid, alpha, n);
        const double b = besov_seminorm(f, P);
        const double v = pvariation(f, r);
        const double bound = std::exp2(n * (1.0 / r - alpha));
        besov_ok = besov_ok && b <= factor * base;
        var_ok = var_ok && v >= bound * (1.0 - slack);
        detail += fmt(" n=%d: B=%.4f V=%.6f bound=%.6f (V/bound=%.4f);", n, b, v, bound, v / bound);
    }
    return {besov_ok && var_ok, detail};
}

Outcome variation_sandwich(const Context& ctx) {
    const double slack = ctx.tol("rel_slack", 1e-12);
    constexpr std::size_t kPaths = 50;
    struct Row {
        double p, var, osc;
    };
    std::vector<Row> rows(kPaths);
    const std::uint64_t stream = ctx.seed("paths");
    parallel_for(kPaths, [&](std::size_t i) {
        Rng rng(sample_seed(stream, i));
        const double p = 1.0 + 3.0 * rng.uniform();
        GridPath f = i % 2 == 0 ? brownian_path(1, UniformGrid(1.0, 8), rng.next())
                                : random_piecewise_linear(UniformGrid(1.0, 8), 1, 3 + rng.below(40), rng.next());
        rows[i] = {p, pvariation(f, p), oscillation_variation(f, p)};
    });
    bool ok = true;
    double lo = kInf, hi = 0.0;
    for (const Row& r : rows) {
        ok = ok && 0.5 * r.var <= r.osc * (1.0 + slack) && r.osc <= r.var * (1.0 + slack);
        lo = std::min(lo, r.osc / r.var);
        hi = std::max(hi, r.osc / r.var);
    }
    return {ok, fmt("%zu paths: osc/var in [%.4f, %.4f] (required [0.5, 1])", kPaths, lo, hi)};
}

Outcome sewing_rate(const Context& ctx) {
    const double slope_tol = ctx.tol("slope", 0.2);
    const double min_r2 = ctx.tol("r2", 0.98);
    const GridPath f = GridPath::sample_scalar(UniformGrid(1.0, 12), [](double t) { return std::sin(t); });
    SewingInput in;
    in.germ = young_germ(f, f);
    in.gamma = 2.0;
    in.p2 = kInf;
    in.q2 = kInf;
    in.remainder_norm = false;
    const SewingResult res = sew(in);
    const RateCertificate cert = rate_certificate(res, 2.0, kInf, 3, 10);
    const bool ok = std::abs(cert.slope + 1.0) <= slope_tol && cert.r2 >= min_r2;
    return {ok, fmt("slope %.4f (target -1 +- %g), R^2 %.5f (min %g)", cert.slope, slope_tol, cert.r2, min_r2)};
}

Outcome young_integral_oracle(const Context& ctx) {
    const double abs_tol = ctx.tol("abs", 1e-4);
    const double min_order = ctx.tol("order", 0.9);
    const double exact = -0.2726756433;
    const BesovParams P{1.0, kInf, kInf};
    const YoungRegime regime = YoungRegime::make(P, P);
    auto error = [&](int L) {
        const UniformGrid grid(1.0, L);
        const GridPath f = GridPath::sample_scalar(grid, [](double t) { return std::sin(t); });
        const GridPath g = GridPath::sample_scalar(grid, [](double t) { return std::cos(t); });
        const YoungIntegral I = young_integral(f, g, regime, false);
        return std::abs(I.integral(grid.cells()) - exact);
    };
    const double e10 = error(10), e12 = error(12);
    const double order = std::log2(e10 / e12) / 2.0;
    return {e12 < abs_tol && order >= min_order,
            fmt("error L=12 %.3e (limit %g), observed order %.3f (min %g)", e12, abs_tol, order, min_order)};
}

Outcome young_ode_oracle(const Context& ctx) {
    const double abs_tol = ctx.tol("abs", 1e-6);
    const UniformGrid grid(1.0, 12);
    const GridPath X = GridPath::sample_scalar(grid, [](double t) { return std::sin(t); });
    const VectorField F = VectorField::linear(1, {{1.0}});
    const YoungOdeResult res = young_ode_solve(F, X, {1.0}, {0.9, kInf, kInf});
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::abs(res.Y(i) - std::exp(std::sin(grid.time(i)))));
    return {err < abs_tol, fmt("sup error %.3e (limit %g), %d Picard iterations over %zu blocks", err, abs_tol,
                               res.iterations, res.block_iterations.size())};
}

Outcome chen_exactness(const Context& ctx) {
    const double exact_tol = ctx.tol("exact", 1e-10);
    const double detect = ctx.tol("fault_detect", 5e-4);
    const UniformGrid grid(1.0, 10);
    const GridPath x = GridPath::sample(grid, 2, [](double t, std::span<double> v) {
        v[0] = std::sin(2.0 * std::numbers::pi * t);
        v[1] = t * t - 0.5 * t;
    });
    const RoughPath canon = canonical_lift(x, 2, LiftFlavor::stratonovich);
    const RoughPath ito = brownian_lift(2, grid, ctx.seed("ito"), LiftFlavor::ito);
    const RoughPath strat = brownian_lift(2, grid, ctx.seed("strat"), LiftFlavor::stratonovich);
    const double rc = chen_residual(canon), ri = chen_residual(ito), rs = chen_residual(strat);

    RoughPath faulty = ito.materialize();
    faulty.level(2).entry(grid.cells() / 3, 2 * grid.cells() / 3)[1] += 1e-3;
    const double rf = chen_residual(faulty);
    const bool ok = rc <= exact_tol && ri <= exact_tol && rs <= exact_tol && rf >= detect;
    return {ok, fmt("canonical %.2e, Ito %.2e, Stratonovich %.2e (limit %g); fault 1e-3 -> %.3e (min %g)", rc, ri,
                    rs, exact_tol, rf, detect)};
}

Outcome lyons_extension_oracle(const Context& ctx) {
    const double match_tol = ctx.tol("match", 1e-10);
    const double dil_tol = ctx.tol("dilation", 1e-12);
    const UniformGrid grid(1.0, 10);
    const GridPath x = GridPath::sample(grid, 2, [](double t, std::span<double> v) {
        v[0] = std::sin(2.0 * std::numbers::pi * t);
        v[1] = std::exp(t) - 1.0;
    });
    const BesovParams P{0.9, kInf, kInf};
    const RoughPath X1 = canonical_lift(x, 1, LiftFlavor::ito, P);
    const RoughPath ext = lyons_extend(X1, 2);
    const double err = max_entry_error(ext, canonical_lift(x, 2, LiftFlavor::ito, P));
    const double lambda = 2.5;
    const double dil = max_entry_error(lyons_extend(dilate(X1, lambda), 2), dilate(ext, lambda));
    return {err < match_tol && dil < dil_tol,
            fmt("extension vs canonical lift %.2e (limit %g); dilation commutator %.2e (limit %g)", err, match_tol, dil,
                dil_tol)};
}

Outcome rough_integral_ito(const Context& ctx) {
    const double max_se = ctx.tol("se", 3.0);
    constexpr std::size_t kSeeds = 2000;
    const UniformGrid grid(1.0, 10);
    const std::uint64_t stream = ctx.seed("bm");
    std::vector<double> q(kSeeds);
    parallel_for(kSeeds, [&](std::size_t i) {
        const RoughPath X = brownian_lift(1, grid, sample_seed(stream, i), LiftFlavor::ito, kDefaultLiftParams,
                                          TwoParamField::Mode::lazy);
        const GridPath W = X.path();
        GridPath ones(grid, 1, std::vector<double>(grid.size(), 1.0));
        const ControlledPath Y(X, W, ones);
        const RoughIntegral I = rough_integral(Y, false);
        const double w1 = W(grid.cells());
        q[i] = I.Z.Y()(grid.cells()) + 0.5 - 0.5 * w1 * w1;
    });
    const double m = mean(q), se = standard_error(q);
    return {std::abs(m) <= max_se * se, fmt("mean %.3e, SE %.3e, |mean|/SE = %.3f (limit %g)", m, se, std::abs(m) / se, max_se)};
}

// dy/dt = sum_j f_j(y) xdot_j for x = (sin t, cos 2t), RK4 with `sub` steps per grid cell.
GridPath rotation_reference(const VectorField& F, const UniformGrid& grid, std::vector<double> y, int sub) {
    GridPath out(grid, 2);
    auto rhs = [&](double t, const std::vector<double>& v) {
        double f[4];
        F.eval(v.data(), f);
        const double xd0 = std::cos(t), xd1 = -2.0 * std::sin(2.0 * t);
        return std::vector<double>{f[0] * xd0 + f[1] * xd1, f[2] * xd0 + f[3] * xd1};
    };
    const double h = grid.mesh() / sub;
    out(0, 0) = y[0];
    out(0, 1) = y[1];
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        for (int s = 0; s < sub; ++s) {
            const double t = grid.time(i) + s * h;
            auto k1 = rhs(t, y);
            std::vector<double> tmp{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
            auto k2 = rhs(t + 0.5 * h, tmp);
            tmp = {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
            auto k3 = rhs(t + 0.5 * h, tmp);
            tmp = {y[0] + h * k3[0], y[1] + h * k3[1]};
            auto k4 = rhs(t + h, tmp);
            for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        out(i + 1, 0) = y[0];
        out(i + 1, 1) = y[1];
    }
    return out;
}

Outcome rde_oracle(const Context& ctx) {
    const double abs_tol = ctx.tol("abs", 1e-4);
    const UniformGrid grid(1.0, 12);
    const RoughPath X = canonical_lift(smooth_driver(grid), 2, LiftFlavor::stratonovich);
    const VectorField F = builtin_field("rotation", 2, 2);
    RdeOptions opts;
    opts.with_report = false;
    const RdeResult res = rde_solve(F, X, {1.0, 0.0}, opts);
    const GridPath ref = rotation_reference(F, grid, {1.0, 0.0}, 8);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t c = 0; c < 2; ++c) err = std::max(err, std::abs(res.solution.Y()(i, c) - ref(i, c)));
    return {err < abs_tol, fmt("sup error vs RK4 %.3e (limit %g), %d iterations over %zu blocks", err, abs_tol,
                               res.iterations, res.block_iterations.size())};
}

Outcome davie_slope(const Context& ctx) {
    const double slope_tol = ctx.tol("slope", 0.3);
    const UniformGrid grid(1.0, 12);
    const RoughPath X = canonical_lift(smooth_driver(grid), 2, LiftFlavor::stratonovich);
    const VectorField F = builtin_field("linear", 1, 2);
    RdeOptions opts;
    opts.tol = 1e-13;
    const RdeResult res = rde_solve(F, X, {1.0}, opts);
    const DavieReport& d = *res.davie;
    return {std::abs(d.slope - 3.0) <= slope_tol,
            fmt("slope %.4f (target 3 +- %g), R^2 %.4f over h in [2^-10, 2^-4]", d.slope, slope_tol, d.slope_r2)};
}

Outcome ito_lyons_stability(const Context& ctx) {
    const double max_factor = ctx.tol("factor", 5.0);
    const UniformGrid grid(1.0, 12);
    const RoughPath X = canonical_lift(smooth_driver(grid), 2, LiftFlavor::stratonovich);
    const VectorField F = builtin_field("rotation", 2, 2);
    const std::vector<double> y0{1.0, 0.0};
    RdeOptions opts;
    opts.with_report = false;
    std::vector<double> ratios;
    std::string detail;
    for (const char* kind : {"y0", "driver", "field"}) {
        detail += std::string(kind) + ":";
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            RdeStabilityReport r;
            if (kind[0] == 'y') {
                r = rde_stability_probe(F, F, X, X, y0, {y0[0] + eps, y0[1] + eps}, opts);
            } else if (kind[0] == 'd') {
                r = rde_stability_probe(F, F, X, dilate(X, 1.0 + eps), y0, y0, opts);
            } else {
                r = rde_stability_probe(F, F.scaled(1.0 + eps), X, X, y0, y0, opts);
            }
            ratios.push_back(r.ratio);
            detail += fmt(" %.3g", r.ratio);
        }
        detail += "; ";
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    const double spread = *hi / *lo;
    return {std::isfinite(spread) && spread < max_factor,
            detail + fmt("max/min %.3f (limit %g)", spread, max_factor)};
}

Outcome bm_statistic(const Context& ctx) {
    const double max_se = ctx.tol("se", 3.0);
    const double slope_tol = ctx.tol("slope", 0.3);
    BmStatisticConfig cfg;
    cfg.p = 4.0;
    cfg.ns = {4, 5, 6, 7, 8, 9, 10};
    cfg.level = 12;
    cfg.samples = 2000;
    cfg.seed = ctx.seed("ynp");
    const YnpReport rep = bm_besov_statistic(cfg);
    bool ok = std::abs(rep.variance_slope + 1.0) <= slope_tol;
    std::string detail;
    for (const YnpLevel& lv : rep.levels) {
        if (lv.n != 4 && lv.n != 6 && lv.n != 8) continue;
        const double z = std::abs(lv.mean - lv.oracle_mean) / std::hypot(lv.stderr_, lv.oracle_stderr);
        ok = ok && z <= max_se;
        detail += fmt("n=%d: %.4f vs oracle %.4f (z=%.2f); ", lv.n, lv.mean, lv.oracle_mean, z);
    }
    return {ok, detail + fmt("variance slope %.3f (target -1 +- %g)", rep.variance_slope, slope_tol)};
}

Outcome paraproduct_bdg(const Context& ctx) {
    const double max_factor = ctx.tol("factor", 2.0);
    PprodConfig cfg;
    cfg.gamma0 = 0.45;
    cfg.gamma1 = 0.6;
    cfg.p0 = cfg.p1 = cfg.q0 = cfg.q1 = 8.0;
    cfg.r0 = cfg.r1 = 8.0;
    cfg.p = cfg.q = cfg.r = 4.0;
    cfg.lengths = {128, 256, 512};
    cfg.samples = 500;
    cfg.seed = ctx.seed("pprod");
    const PprodReport rep = pprod_bdg_experiment(cfg);
    std::string detail;
    for (const PprodLength& l : rep.lengths)
        detail += fmt("J=%zu: p99 %.4f, F=1 p99 %.4f; ", l.length, l.ratio_p99, l.bdg_p99);
    const bool ok = rep.ratio_spread < max_factor && rep.bdg_spread < max_factor;
    return {ok, detail + fmt("spread %.3f, F=1 spread %.3f (limit %g)", rep.ratio_spread, rep.bdg_spread, max_factor)};
}

Outcome brownian_q_dichotomy(const Context& ctx) {
    const double min_growth = ctx.tol("growth", 0.20);
    const double max_change = ctx.tol("change", 0.10);
    constexpr std::size_t kSeeds = 20;
    std::vector<double> q10(kSeeds), q14(kSeeds), i10(kSeeds), i14(kSeeds);
    const std::uint64_t stream = ctx.seed("bm");
    parallel_for(kSeeds, [&](std::size_t s) {
        const GridPath W14 = brownian_path(1, UniformGrid(1.0, 14), sample_seed(stream, s));
        const GridPath W10 = W14.subsample(4);
        q10[s] = besov_seminorm(W10, {0.5, 8.0, 8.0});
        q14[s] = besov_seminorm(W14, {0.5, 8.0, 8.0});
        i10[s] = besov_seminorm(W10, {0.45, 8.0, kInf});
        i14[s] = besov_seminorm(W14, {0.45, 8.0, kInf});
    });
    const double growth = median(q14) / median(q10) - 1.0;
    const double change = std::abs(median(i14) / median(i10) - 1.0);
    return {growth >= min_growth && change < max_change,
            fmt("B^{1/2}_{8,8} median %.4f -> %.4f (growth %.2f%%, min %g%%); B^{0.45}_{8,inf} change %.2f%% (limit %g%%)",
                median(q10), median(q14), 100 * growth, 100 * min_growth, 100 * change, 100 * max_change)};
}

using Runner = Outcome (*)(const Context&);

struct Entry {
    CriterionInfo info;
    Runner run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r{
        {{1, "heaviside-critical-norm", 1}, heaviside_critical_norm},
        {{2, "norm-form-equivalence", 30}, norm_form_equivalence},
        {{3, "heaviside-divergence", 5}, heaviside_divergence},
        {{4, "sawtooth-sharpness", 30}, sawtooth_sharpness},
        {{5, "variation-sandwich", 10}, variation_sandwich},
        {{6, "sewing-rate", 5}, sewing_rate},
        {{7, "young-integral-oracle", 1}, young_integral_oracle},
        {{8, "young-ode-oracle", 2}, young_ode_oracle},
        {{9, "chen-exactness", 10}, chen_exactness},
        {{10, "lyons-extension-oracle", 5}, lyons_extension_oracle},
        {{11, "rough-integral-ito", 60}, rough_integral_ito},
        {{12, "rde-oracle", 10}, rde_oracle},
        {{13, "davie-slope", 5}, davie_slope},
        {{14, "ito-lyons-stability", 60}, ito_lyons_stability},
        {{15, "bm-statistic", 180}, bm_statistic},
        {{16, "paraproduct-bdg", 180}, paraproduct_bdg},
        {{17, "brownian-q-dichotomy", 60}, brownian_q_dichotomy},
    };
    return r;
}

}  // namespace

const std::vector<CriterionInfo>& primary_criteria() {
    static const std::vector<CriterionInfo> infos = [] {
        std::vector<CriterionInfo> v;
        for (const Entry& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::vector<CriterionResult> run_primary_suite(const SuiteOptions& opts,
                                               const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (const Entry& e : registry()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.info.id) == opts.only.end()) continue;
        CriterionResult r;
        r.id = e.info.id;
        r.name = e.info.name;
        r.budget_seconds = e.info.budget_seconds;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = e.run(Context(opts, e.info.name));
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& ex) {
            r.passed = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    return fmt("%s  #%02d %-24s %s  [%.2f s / %g s]", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
               r.detail.c_str(), r.seconds, r.budget_seconds);
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    std::size_t passed = 0;
    for (const CriterionResult& r : results) {
        passed += r.passed ? 1 : 0;
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"detail", r.detail},
                       {"seconds", r.seconds},
                       {"budget_seconds", r.budget_seconds}});
    }
    return {{"suite", "primary"}, {"passed", passed}, {"total", results.size()}, {"criteria", arr}};
}

}  // namespace besov_rough::acceptance
