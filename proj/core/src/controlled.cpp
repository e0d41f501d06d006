#include "besov_rough/controlled.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "besov_rough/errors.hpp"
#include "besov_rough/stats.hpp"
#include "besov_rough/young.hpp"

namespace besov_rough {

namespace {

constexpr double kEq = 1e-12;

bool is_endpoint(const BesovParams& P) { return std::abs(P.alpha - 1.0 / 3.0) <= kEq; }

double euclid(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

double euclid(std::span<const double> v) { return euclid(v.data(), v.size()); }

GridPath constant_path(const UniformGrid& g, const std::vector<double>& v) {
    GridPath out(g, v.size());
    for (std::size_t i = 0; i < out.size(); ++i) std::copy(v.begin(), v.end(), out.row(i).begin());
    return out;
}

}  // namespace

ControlledPath::ControlledPath(RoughPath X, GridPath Y, GridPath Yprime, TwoParamField::Mode mode)
    : X_(std::move(X)), Y_(std::move(Y)), Yp_(std::move(Yprime)) {
    if (!(Y_.grid() == X_.grid()) || !(Yp_.grid() == X_.grid()))
        throw std::invalid_argument("controlled path and driver live on different grids");
    if (Yp_.dim() != Y_.dim() * static_cast<std::size_t>(X_.base_dim()))
        throw std::invalid_argument("Gubinelli derivative must have dim(Y) * n components");
    R_ = recompute_remainder(mode);
}

TwoParamField ControlledPath::recompute_remainder(TwoParamField::Mode mode) const {
    // Level-1 increments of a rough path are the increments of its path, so R reads plain arrays.
    const std::size_t m = Y_.dim(), n = static_cast<std::size_t>(X_.base_dim());
    auto y = std::make_shared<const std::vector<double>>(Y_.values());
    auto yp = std::make_shared<const std::vector<double>>(Yp_.values());
    auto x = std::make_shared<const std::vector<double>>(X_.path().values());
    return TwoParamField::from_function(
        Y_.grid(), m,
        [y, yp, x, m, n](std::size_t s, std::size_t t, double* out) {
            const double* d = yp->data() + s * m * n;
            const double* xs = x->data() + s * n;
            const double* xt = x->data() + t * n;
            for (std::size_t a = 0; a < m; ++a) {
                double v = (*y)[t * m + a] - (*y)[s * m + a];
                for (std::size_t i = 0; i < n; ++i) v -= d[a * n + i] * (xt[i] - xs[i]);
                out[a] = v;
            }
        },
        mode);
}

ControlledPath ControlledPath::slice(std::size_t start, std::size_t len) const {
    return ControlledPath(X_.slice(start, len), Y_.slice(start, len), Yp_.slice(start, len), TwoParamField::Mode::lazy);
}

double controlled_norm(const ControlledPath& Y) {
    const BesovParams& P = Y.driver().params();
    return besov_seminorm(Y.Yprime(), P) + two_param_norm(Y.remainder(), 2 * P.alpha, P.p / 2, P.q / 2);
}

double controlled_distance(const ControlledPath& Y, const ControlledPath& Z) {
    if (!(Y.grid() == Z.grid()) || Y.dim() != Z.dim() || Y.Yprime().dim() != Z.Yprime().dim())
        throw std::invalid_argument("controlled paths have different shapes");
    const BesovParams& P = Y.driver().params();
    // R^Y - R^Z evaluated in one pass.
    const std::size_t m = Y.dim(), n = static_cast<std::size_t>(Y.driver().base_dim());
    auto dy = std::make_shared<const std::vector<double>>((Y.Y() - Z.Y()).values());
    auto yp = std::make_shared<const std::vector<double>>(Y.Yprime().values());
    auto zp = std::make_shared<const std::vector<double>>(Z.Yprime().values());
    auto x = std::make_shared<const std::vector<double>>(Y.driver().path().values());
    auto z = std::make_shared<const std::vector<double>>(Z.driver().path().values());
    const TwoParamField D = TwoParamField::from_function(
        Y.grid(), m,
        [dy, yp, zp, x, z, m, n](std::size_t s, std::size_t t, double* out) {
            const double* a1 = yp->data() + s * m * n;
            const double* a2 = zp->data() + s * m * n;
            for (std::size_t a = 0; a < m; ++a) {
                double v = (*dy)[t * m + a] - (*dy)[s * m + a];
                for (std::size_t i = 0; i < n; ++i)
                    v -= a1[a * n + i] * ((*x)[t * n + i] - (*x)[s * n + i]) -
                         a2[a * n + i] * ((*z)[t * n + i] - (*z)[s * n + i]);
                out[a] = v;
            }
        },
        TwoParamField::Mode::lazy);
    return besov_metric(Y.Yprime(), Z.Yprime(), P) +
           two_param_difference_metric(D, 2 * P.alpha, P.p / 2, P.q / 2);
}

RemainderBounds remainder_bounds_check(const ControlledPath& Y, double beta) {
    const BesovParams& P = Y.driver().params();
    if (!(beta > P.alpha + 1.0 / P.p && beta <= 2 * P.alpha + kEq))
        throw RegimeError("remainder bounds need alpha + 1/p < beta <= 2 alpha");
    const double T = Y.grid().horizon();
    const GridPath x = Y.driver().path();
    const double sx = besov_seminorm(x, P);
    const double syp = besov_seminorm(Y.Yprime(), P);
    const double rb = two_param_norm(Y.remainder(), beta, P.p / 2, P.q / 2);
    auto report = [](double l, double r) { return InequalityReport{l, r, (l == 0.0 && r == 0.0) ? 0.0 : l / r}; };
    RemainderBounds out;
    out.beta = beta;
    out.holder = report(holder_norm(Y.remainder(), beta - 2.0 / P.p), rb + syp * sx);
    const double tf = std::max(std::pow(T, beta - P.alpha - 1.0 / P.p), std::pow(T, P.alpha - 1.0 / P.p));
    out.control = report(besov_seminorm(Y.Y(), P), euclid(Y.Yprime().row(0)) * sx + tf * (syp * sx + rb));
    return out;
}

RoughIntegral rough_integral(const ControlledPath& Y, bool with_remainder_norm) {
    const RoughPath& X = Y.driver();
    const BesovParams& P = X.params();
    if (X.depth() < 2) throw RegimeError("rough integration needs a level-2 rough path");
    if (!P.level2_ok())
        throw RegimeError("driver parameters violate the level-2 regime (1/3 <= alpha, alpha > 1/p, q <= 3 at 1/3)");
    const std::size_t n = static_cast<std::size_t>(X.base_dim());
    if (Y.dim() % n != 0) throw std::invalid_argument("integrand dimension must be a multiple of the driver dimension");
    const std::size_t d = Y.dim() / n;
    auto y = std::make_shared<const std::vector<double>>(Y.Y().values());
    auto yp = std::make_shared<const std::vector<double>>(Y.Yprime().values());
    const TwoParamField X1 = X.level(1), X2 = X.level(2);
    const TwoParamField A = TwoParamField::from_function(
        X.grid(), d,
        [y, yp, X1, X2, n, d](std::size_t s, std::size_t t, double* out) {
            double dx[Tensor::kMaxDim], xx[Tensor::kMaxDim * Tensor::kMaxDim];
            X1.get(s, t, dx);
            X2.get(s, t, xx);
            const double* ys = y->data() + s * d * n;
            const double* ps = yp->data() + s * d * n * n;
            for (std::size_t a = 0; a < d; ++a) {
                double v = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    v += ys[a * n + j] * dx[j];
                    for (std::size_t i = 0; i < n; ++i) v += ps[(a * n + j) * n + i] * xx[i * n + j];
                }
                out[a] = v;
            }
        },
        TwoParamField::Mode::lazy);
    SewingInput in;
    in.germ = A;
    in.endpoint = is_endpoint(P);
    in.gamma = in.endpoint ? 1.0 : 3 * P.alpha;
    in.p2 = P.p / 3;
    in.q2 = P.q / 3;
    in.diagnostics = false;
    in.remainder_norm = with_remainder_norm;
    SewingResult res = sew(in);
    RoughIntegral out;
    out.remainder_norm = res.remainder_norm;
    if (in.endpoint && with_remainder_norm) out.endpoint_profile = small_oscillation_check(res.remainder, in.p2);
    out.Z = ControlledPath(X, std::move(res.integral), Y.Y());
    return out;
}

ControlledPath compose_controlled(const VectorField& F, const ControlledPath& Y) {
    const std::size_t m = Y.dim(), n = static_cast<std::size_t>(Y.driver().base_dim()), o = F.out_dim();
    if (F.in_dim() != m) throw std::invalid_argument("vector field input dimension does not match the path");
    GridPath Z(Y.grid(), o), Zp(Y.grid(), o * n);
    std::vector<double> J(o * m);
    for (std::size_t t = 0; t < Z.size(); ++t) {
        const double* y = Y.Y().row(t).data();
        F.eval(y, Z.row(t).data());
        F.jacobian(y, J.data());
        const double* yp = Y.Yprime().row(t).data();
        double* zp = Zp.row(t).data();
        for (std::size_t k = 0; k < o; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                double v = 0.0;
                for (std::size_t b = 0; b < m; ++b) v += J[k * m + b] * yp[b * n + i];
                zp[k * n + i] = v;
            }
    }
    return ControlledPath(Y.driver(), std::move(Z), std::move(Zp));
}

InequalityReport compose_bound_check(const VectorField& F, const ControlledPath& Y) {
    if (!F.has_hessian()) throw RegimeError("composition bound needs a C^2 field with an analytic Hessian");
    const std::size_t m = F.in_dim(), o = F.out_dim();
    const auto cloud = trajectory_cloud({&Y.Y()});
    std::vector<double> v(o), J(o * m), H(o * m * m);
    double c2 = 0.0;
    for (const auto& y : cloud) {
        F.eval(y.data(), v.data());
        F.jacobian(y.data(), J.data());
        F.hessian(y.data(), H.data());
        c2 = std::max({c2, euclid(v.data(), v.size()), euclid(J.data(), J.size()), euclid(H.data(), H.size())});
    }
    const ControlledPath Z = compose_controlled(F, Y);
    const double lhs = controlled_norm(Z);
    const double u = euclid(Y.Yprime().row(0)) + controlled_norm(Y);
    const double rhs = c2 * (1.0 + besov_seminorm(Y.driver().path(), Y.driver().params())) * std::max(u, u * u);
    return {lhs, rhs, (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs};
}

RoughPath with_time_coordinate(const RoughPath& X) {
    if (X.depth() != 2) throw std::invalid_argument("time augmentation is defined for level-2 paths");
    const int n = X.base_dim();
    if (n + 1 > Tensor::kMaxDim) throw std::invalid_argument("time augmentation exceeds the supported dimension");
    const std::size_t nn = static_cast<std::size_t>(n), N1 = nn + 1;
    const UniformGrid g = X.grid();
    const GridPath x = X.path();
    // P_j(u) = mesh * sum_{k < u} x^j_k.
    auto P = std::make_shared<std::vector<double>>(x.size() * nn, 0.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        for (std::size_t j = 0; j < nn; ++j) (*P)[i * nn + j] = (*P)[(i - 1) * nn + j] + g.mesh() * x(i - 1, j);
    auto xv = std::make_shared<const std::vector<double>>(x.values());
    const TwoParamField X1 = X.level(1), X2 = X.level(2);
    std::vector<TwoParamField> lv;
    lv.push_back(TwoParamField::from_function(
        g, N1,
        [X1, g, nn](std::size_t s, std::size_t t, double* out) {
            X1.get(s, t, out);
            out[nn] = g.time(t) - g.time(s);
        },
        TwoParamField::Mode::lazy));
    lv.push_back(TwoParamField::from_function(
        g, N1 * N1,
        [X2, g, P, xv, nn, N1](std::size_t s, std::size_t t, double* out) {
            double xx[Tensor::kMaxDim * Tensor::kMaxDim];
            X2.get(s, t, xx);
            const double dt = g.time(t) - g.time(s);
            for (std::size_t i = 0; i < nn; ++i)
                for (std::size_t j = 0; j < nn; ++j) out[i * N1 + j] = xx[i * nn + j];
            for (std::size_t j = 0; j < nn; ++j) {
                const double dx = (*xv)[t * nn + j] - (*xv)[s * nn + j];
                const double xt = (*P)[t * nn + j] - (*P)[s * nn + j] - (*xv)[s * nn + j] * dt;
                out[j * N1 + nn] = xt;
                out[nn * N1 + j] = dt * dx - xt;
            }
            out[nn * N1 + nn] = 0.5 * dt * dt;
        },
        TwoParamField::Mode::lazy));
    return RoughPath(n + 1, 2, std::move(lv), X.params());
}

void check_rde_field(const VectorField& F, const BesovParams& P) {
    if (!P.level2_ok()) throw RegimeError("driver parameters violate the level-2 regime");
    const Smoothness s = F.smoothness();
    const bool c3 = s == Smoothness::C3 || s == Smoothness::Cinf;
    if (is_endpoint(P)) {
        if (!c3) throw RegimeError("alpha = 1/3 requires a C^3 vector field");
        return;
    }
    if (c3) return;
    double delta = -1.0;
    if (s == Smoothness::C2) delta = 0.0;
    if (s == Smoothness::C2delta) delta = F.holder_delta();
    if (delta < 0.0 || !((2.0 + delta) * P.alpha > 1.0))
        throw RegimeError("vector field class is insufficient: need f in C^{2,delta} with (2 + delta) alpha > 1");
}

namespace {

// Seed (y + f(y) delta X_{0t}, f(y)) on a block.
ControlledPath rde_seed(const VectorField& F, const RoughPath& Xb, const std::vector<double>& y) {
    const std::size_t m = y.size(), n = static_cast<std::size_t>(Xb.base_dim());
    const std::vector<double> fy = F.eval(y);
    GridPath Y(Xb.grid(), m);
    std::vector<double> dx(n);
    for (std::size_t t = 0; t < Y.size(); ++t) {
        Xb.level(1).get(0, t, dx.data());
        for (std::size_t a = 0; a < m; ++a) {
            double v = y[a];
            for (std::size_t j = 0; j < n; ++j) v += fy[a * n + j] * dx[j];
            Y(t, a) = v;
        }
    }
    return ControlledPath(Xb, std::move(Y), constant_path(Xb.grid(), fy));
}

ControlledPath picard_step(const VectorField& F, const ControlledPath& cur, const std::vector<double>& y) {
    RoughIntegral I = rough_integral(compose_controlled(F, cur), false);
    GridPath Z = I.Z.Y();
    for (std::size_t t = 0; t < Z.size(); ++t)
        for (std::size_t a = 0; a < y.size(); ++a) Z(t, a) += y[a];
    return ControlledPath(cur.driver(), std::move(Z), I.Z.Yprime());
}

}  // namespace

RdeResult rde_solve(const VectorField& F, const RoughPath& Xin, const std::vector<double>& y0,
                    const RdeOptions& opts) {
    const RoughPath X = Xin.depth() > 2 ? Xin.truncate(2) : Xin;
    if (X.depth() < 2) throw RegimeError("RDE driver must be a level-2 rough path");
    const BesovParams& P = X.params();
    check_rde_field(F, P);
    const std::size_t m = F.in_dim(), n = static_cast<std::size_t>(X.base_dim());
    if (F.rows() != m || F.cols() != n) throw std::invalid_argument("field shape does not match state/driver");
    if (y0.size() != m) throw std::invalid_argument("initial value dimension mismatch");

    const std::size_t C = X.grid().cells();
    GridPath Y(X.grid(), m), Yp(X.grid(), m * n);
    for (std::size_t a = 0; a < m; ++a) Y(0, a) = y0[a];
    RdeResult res;
    res.boundaries.push_back(0);
    std::size_t start = 0, len = C, shortest = C;
    const std::size_t min_len = std::max<std::size_t>(1, C >> opts.max_halvings);
    while (start < C) {
        while (start % len != 0 || start + len > C) len /= 2;
        const RoughPath Xb = X.slice(start, len);
        const std::vector<double> y(Y.row(start).begin(), Y.row(start).end());
        ControlledPath cur = rde_seed(F, Xb, y);
        double prev = -1.0;
        bool converged = false;
        int it = 0;
        while (it < opts.max_iterations) {
            ControlledPath next = picard_step(F, cur, y);
            const double d = controlled_distance(next, cur);
            cur = std::move(next);
            ++it;
            if (!std::isfinite(d)) break;
            if (d < opts.tol) {
                converged = true;
                break;
            }
            if (prev > 0.0 && d / prev >= opts.contraction) break;
            prev = d;
        }
        res.iterations += it;
        if (!converged) {
            if (it >= opts.max_iterations) throw NumericalError("RDE: maximum Picard iterations exceeded");
            if (len / 2 < min_len || len == 1)
                throw NumericalError("RDE: no contraction after " + std::to_string(opts.max_halvings) + " halvings");
            len /= 2;
            continue;
        }
        for (std::size_t i = 0; i < cur.Y().size(); ++i) {
            if (i > 0) std::copy(cur.Y().row(i).begin(), cur.Y().row(i).end(), Y.row(start + i).begin());
            std::copy(cur.Yprime().row(i).begin(), cur.Yprime().row(i).end(), Yp.row(start + i).begin());
        }
        shortest = std::min(shortest, len);
        res.block_iterations.push_back(it);
        start += len;
        res.boundaries.push_back(start);
    }
    res.solution = ControlledPath(X, std::move(Y), std::move(Yp));
    const double T0 = static_cast<double>(shortest) * X.grid().mesh();
    const double w = is_endpoint(P) ? T0 * EndpointModulus{P.q / 3, 0.1, 1.0}.ell(T0) : std::pow(T0, 3 * P.alpha);
    res.smallness = w / std::pow(T0, 2 * P.alpha + 1.0 / P.p);
    if (opts.with_report) {
        res.controlled_norm = controlled_norm(res.solution);
        res.bound_M = euclid(res.solution.Y().row(0)) + euclid(res.solution.Yprime().row(0)) + res.controlled_norm;
        res.davie = davie_residual(res.solution, F, opts.davie_h_lo, opts.davie_h_hi);
    }
    return res;
}

DavieReport davie_residual(const ControlledPath& Y, const VectorField& F, double h_lo, double h_hi) {
    const RoughPath& X = Y.driver();
    if (X.depth() < 2) throw RegimeError("Davie residual needs a level-2 rough path");
    const BesovParams& P = X.params();
    const std::size_t m = Y.dim(), n = static_cast<std::size_t>(X.base_dim());
    if (F.in_dim() != m || F.rows() != m || F.cols() != n) throw std::invalid_argument("field shape mismatch");
    struct Cache {
        std::vector<double> y, f, dff;
    };
    auto c = std::make_shared<Cache>();
    const std::size_t N1 = Y.grid().size();
    c->y = Y.Y().values();
    c->f.resize(N1 * m * n);
    c->dff.resize(N1 * m * n * n);
    std::vector<double> J(m * n * m);
    for (std::size_t t = 0; t < N1; ++t) {
        const double* y = c->y.data() + t * m;
        double* f = c->f.data() + t * m * n;
        F.eval(y, f);
        F.jacobian(y, J.data());
        double* g = c->dff.data() + t * m * n * n;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (std::size_t b = 0; b < m; ++b) s += J[(a * n + j) * m + b] * f[b * n + i];
                    g[(a * n + j) * n + i] = s;
                }
    }
    const TwoParamField X1 = X.level(1), X2 = X.level(2);
    DavieReport rep;
    rep.D = TwoParamField::from_function(
        Y.grid(), m,
        [c, X1, X2, m, n](std::size_t s, std::size_t t, double* out) {
            double dx[Tensor::kMaxDim], xx[Tensor::kMaxDim * Tensor::kMaxDim];
            X1.get(s, t, dx);
            X2.get(s, t, xx);
            const double* f = c->f.data() + s * m * n;
            const double* g = c->dff.data() + s * m * n * n;
            for (std::size_t a = 0; a < m; ++a) {
                double v = c->y[t * m + a] - c->y[s * m + a];
                for (std::size_t j = 0; j < n; ++j) {
                    v -= f[a * n + j] * dx[j];
                    for (std::size_t i = 0; i < n; ++i) v -= g[(a * n + j) * n + i] * xx[i * n + j];
                }
                out[a] = v;
            }
        },
        TwoParamField::Mode::lazy);
    if (is_endpoint(P)) {
        rep.norm = two_param_norm_weighted(rep.D, [](double h) { return h; }, P.p / 3, kInf);
        rep.endpoint_profile = small_oscillation_check(rep.D, P.p / 3);
    } else {
        rep.norm = two_param_norm(rep.D, 3 * P.alpha, P.p / 3, P.q / 3);
    }
    const UniformGrid& g = Y.grid();
    const std::size_t C = g.cells();
    std::vector<double> lx, ly, buf(m);
    for (std::size_t k = 1; k <= C; k *= 2) {
        const double h = static_cast<double>(k) * g.mesh();
        if (h < h_lo * (1 - kEq) || h > h_hi * (1 + kEq)) continue;
        double sup = 0.0;
        for (std::size_t r = 0; r + k <= C; ++r) {
            rep.D.get(r, r + k, buf.data());
            sup = std::max(sup, euclid(buf.data(), m));
        }
        rep.h.push_back(h);
        rep.sup.push_back(sup);
        if (sup > 0.0) {
            lx.push_back(std::log2(h));
            ly.push_back(std::log2(sup));
        }
    }
    if (lx.size() >= 2) {
        const LinearFit fit = linear_fit(lx, ly);
        rep.slope = fit.slope;
        rep.slope_r2 = fit.r2;
    } else {
        rep.slope = std::nan("");
        rep.slope_r2 = std::nan("");
    }
    return rep;
}

RdeStabilityReport rde_stability_probe(const VectorField& F1, const VectorField& F2, const RoughPath& X1,
                                       const RoughPath& X2, const std::vector<double>& y1,
                                       const std::vector<double>& y2, const RdeOptions& opts) {
    RdeOptions o = opts;
    o.with_report = false;
    const RdeResult s1 = rde_solve(F1, X1, y1, o);
    const RdeResult s2 = rde_solve(F2, X2, y2, o);
    const double out = controlled_distance(s1.solution, s2.solution);
    double dy = 0.0;
    for (std::size_t a = 0; a < y1.size(); ++a) dy += (y1[a] - y2[a]) * (y1[a] - y2[a]);
    const auto cloud = trajectory_cloud({&s1.solution.Y(), &s2.solution.Y()});
    const double in = std::sqrt(dy) + rough_metric(X1.truncate(2), X2.truncate(2)) + field_distance_proxy(F1, F2, cloud);
    const BesovParams& P = X1.params();
    const double lo = std::max(P.alpha + 1.0 / P.p, 1.0 - P.alpha);
    return {out, in, (out == 0.0 && in == 0.0) ? 0.0 : out / in, lo < 2 * P.alpha};
}

}  // namespace besov_rough
