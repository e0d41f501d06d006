#include "besov_rough/young.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "besov_rough/errors.hpp"
#include "besov_rough/random.hpp"

namespace besov_rough {

namespace {
constexpr double kEq = 1e-12;

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }
double from_inv(double r) { return r == 0.0 ? kInf : 1.0 / r; }
}  // namespace

YoungRegime YoungRegime::make(const BesovParams& f, const BesovParams& g) {
    f.validate();
    g.validate();
    YoungRegime r{f, g, f.alpha + g.alpha, from_inv(inv(f.p) + inv(g.p)), from_inv(inv(f.q) + inv(g.q)), 0};
    const double crit = std::max(1.0, inv(r.p2));
    if (r.gamma > crit + kEq) {
        r.case_tag = 'a';
    } else if (std::abs(r.gamma - crit) <= kEq && crit <= inv(r.q2) + kEq) {
        r.case_tag = 'b';
    } else {
        throw RegimeError("Young regime violated: gamma = " + std::to_string(r.gamma) + ", max(1, 1/p2) = " +
                          std::to_string(crit) + ", 1/q2 = " + std::to_string(inv(r.q2)));
    }
    return r;
}

TwoParamField young_germ(const GridPath& f, const GridPath& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("young_germ: grid mismatch");
    auto fv = std::make_shared<const std::vector<double>>(f.values());
    auto gv = std::make_shared<const std::vector<double>>(g.values());
    const std::size_t m = f.dim(), d = g.dim();
    return TwoParamField::from_function(f.grid(), m * d, [fv, gv, m, d](std::size_t s, std::size_t t, double* out) {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < d; ++b)
                out[a * d + b] = (*fv)[s * m + a] * ((*gv)[t * d + b] - (*gv)[s * d + b]);
    }, TwoParamField::Mode::lazy);
}

YoungIntegral young_integral(const GridPath& f, const GridPath& g, const YoungRegime& regime,
                             bool with_remainder_norm) {
    const TwoParamField A = young_germ(f, g);
    SewingInput in;
    in.germ = A;
    in.gamma = regime.gamma;
    in.p2 = regime.p2;
    in.q2 = regime.q2;
    in.endpoint = regime.case_tag == 'b';
    in.diagnostics = false;
    in.remainder_norm = with_remainder_norm;
    SewingResult res = sew(in);
    return {std::move(res.integral), res.remainder_norm};
}

namespace {

// Holder-delta constant of F over random pairs in the cloud.
double holder_constant(const VectorField& F, const std::vector<std::vector<double>>& cloud, double delta,
                       bool derivative) {
    double best = 0.0;
    const std::size_t o = derivative ? F.out_dim() * F.in_dim() : F.out_dim();
    std::vector<double> a(o), b(o);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            double dist = 0.0;
            for (std::size_t c = 0; c < F.in_dim(); ++c) dist += (cloud[i][c] - cloud[j][c]) * (cloud[i][c] - cloud[j][c]);
            dist = std::sqrt(dist);
            if (dist == 0.0) continue;
            if (derivative) {
                F.jacobian(cloud[i].data(), a.data());
                F.jacobian(cloud[j].data(), b.data());
            } else {
                F.eval(cloud[i].data(), a.data());
                F.eval(cloud[j].data(), b.data());
            }
            double s = 0.0;
            for (std::size_t k = 0; k < o; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
            best = std::max(best, std::sqrt(s) / std::pow(dist, delta));
        }
    return best;
}

GridPath apply(const VectorField& F, const GridPath& Y) {
    GridPath out(Y.grid(), F.out_dim());
    for (std::size_t i = 0; i < Y.size(); ++i) F.eval(Y.row(i).data(), out.row(i).data());
    return out;
}

}  // namespace

CompositionReport besov_composition_check(const VectorField& F, const GridPath& Y, const BesovParams& params,
                                          double delta, const std::optional<GridPath>& Ytilde) {
    std::vector<const GridPath*> paths{&Y};
    if (Ytilde) paths.push_back(&*Ytilde);
    const auto cloud = trajectory_cloud(paths, 0, 64);
    const BesovParams target{delta * params.alpha, params.p, params.q / delta};
    const double T = Y.grid().horizon();
    const double sY = besov_seminorm(Y, params);
    const GridPath FY = apply(F, Y);
    CompositionReport rep;
    {
        const double lhs = besov_seminorm(FY, target);
        const double rhs = holder_constant(F, cloud, delta, false) * std::pow(T, (1.0 - delta) * inv(params.p)) *
                           std::pow(sY, delta);
        rep.value = {lhs, rhs, (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs};
    }
    if (Ytilde) {
        if (!(params.alpha > inv(params.p))) throw RegimeError("difference bound requires alpha > 1/p");
        const GridPath FYt = apply(F, *Ytilde);
        const double sYt = besov_seminorm(*Ytilde, params);
        const double lhs = besov_seminorm(FY - FYt, target);
        const double dfh = holder_constant(F, cloud, delta, true);
        double df_sup = 0.0;
        std::vector<double> J(F.out_dim() * F.in_dim());
        for (const auto& y : cloud) {
            F.jacobian(y.data(), J.data());
            double s = 0.0;
            for (double x : J) s += x * x;
            df_sup = std::max(df_sup, std::sqrt(s));
        }
        double y0gap = 0.0;
        for (std::size_t c = 0; c < Y.dim(); ++c) y0gap += (Y(0, c) - (*Ytilde)(0, c)) * (Y(0, c) - (*Ytilde)(0, c));
        y0gap = std::sqrt(y0gap);
        const double pw = std::pow(sY, delta) + std::pow(sYt, delta);
        const double rhs = dfh * pw * y0gap + (df_sup + dfh) * (1.0 + pw) * besov_seminorm(Y - *Ytilde, params);
        rep.difference = InequalityReport{lhs, rhs, (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs};
    }
    return rep;
}

namespace {

// A_st = F(Y_s) dX_st + (1/2) DF(Y_s) F(Y_s) [dX_st, dX_st] for a block of the driver.
TwoParamField ode_germ(const VectorField& F, const GridPath& Y, const GridPath& X) {
    const std::size_t m = F.in_dim(), n = X.dim();
    struct Cache {
        std::vector<double> f, dff;  // per node: F(Y_i) (m*n) and (DF F)(Y_i) (m*n*n, index (a*n+j)*n+i)
    };
    auto cache = std::make_shared<Cache>();
    cache->f.resize(Y.size() * m * n);
    cache->dff.assign(Y.size() * m * n * n, 0.0);
    std::vector<double> J(m * n * m);
    for (std::size_t t = 0; t < Y.size(); ++t) {
        const double* y = Y.row(t).data();
        double* f = cache->f.data() + t * m * n;
        F.eval(y, f);
        F.jacobian(y, J.data());
        double* g = cache->dff.data() + t * m * n * n;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (std::size_t b = 0; b < m; ++b) s += J[(a * n + j) * m + b] * f[b * n + i];
                    g[(a * n + j) * n + i] = s;
                }
    }
    auto xv = std::make_shared<const std::vector<double>>(X.values());
    return TwoParamField::from_function(Y.grid(), m, [cache, xv, m, n](std::size_t s, std::size_t t, double* out) {
        const double* f = cache->f.data() + s * m * n;
        const double* g = cache->dff.data() + s * m * n * n;
        double dx[8];
        for (std::size_t i = 0; i < n; ++i) dx[i] = (*xv)[t * n + i] - (*xv)[s * n + i];
        for (std::size_t a = 0; a < m; ++a) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                v += f[a * n + j] * dx[j];
                for (std::size_t i = 0; i < n; ++i) v += 0.5 * g[(a * n + j) * n + i] * dx[i] * dx[j];
            }
            out[a] = v;
        }
    }, TwoParamField::Mode::lazy);
}

}  // namespace

YoungOdeResult young_ode_solve(const VectorField& F, const GridPath& X, const std::vector<double>& y0,
                               const BesovParams& params, const YoungOdeOptions& opts) {
    if (!params.young_ok()) throw RegimeError("driver parameters are outside the Young regime");
    const std::size_t m = F.in_dim();
    if (F.rows() != m || F.cols() != X.dim()) throw std::invalid_argument("field shape does not match state/driver");
    if (y0.size() != m) throw std::invalid_argument("initial value dimension mismatch");
    if (X.dim() > 8) throw std::invalid_argument("driver dimension above 8 is not supported");
    const std::size_t C = X.grid().cells();
    YoungOdeResult res;
    res.Y = GridPath(X.grid(), m);
    for (std::size_t c = 0; c < m; ++c) res.Y(0, c) = y0[c];
    res.boundaries.push_back(0);
    std::size_t start = 0, len = C;
    const std::size_t min_len = std::max<std::size_t>(1, C >> opts.max_halvings);
    while (start < C) {
        while (start % len != 0 || start + len > C) len /= 2;
        const GridPath Xb = X.slice(start, len);
        GridPath cur(Xb.grid(), m);
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t c = 0; c < m; ++c) cur(i, c) = res.Y(start, c);
        double prev = -1.0;
        bool converged = false, stalled = false;
        int it = 0;
        while (it < opts.max_iterations) {
            GridPath next = sew_integral(ode_germ(F, cur, Xb));
            for (std::size_t i = 0; i < next.size(); ++i)
                for (std::size_t c = 0; c < m; ++c) next(i, c) += res.Y(start, c);
            const double d = besov_metric(next, cur, params);
            cur = std::move(next);
            ++it;
            if (d < opts.tol) {
                converged = true;
                break;
            }
            if (prev > 0.0 && d / prev >= opts.contraction) {
                stalled = true;
                break;
            }
            prev = d;
        }
        res.iterations += it;
        if (!converged) {
            if (!stalled) throw NumericalError("Young ODE: maximum Picard iterations exceeded");
            if (len / 2 < min_len || len == 1)
                throw NumericalError("Young ODE: no contraction after the maximum number of halvings");
            len /= 2;
            continue;
        }
        for (std::size_t i = 1; i < cur.size(); ++i)
            for (std::size_t c = 0; c < m; ++c) res.Y(start + i, c) = cur(i, c);
        res.block_iterations.push_back(it);
        start += len;
        res.boundaries.push_back(start);
    }
    res.bound_M = besov_seminorm(res.Y, params);
    res.driver_seminorm = besov_seminorm(X, params);
    return res;
}

std::vector<std::vector<double>> trajectory_cloud(const std::vector<const GridPath*>& paths, std::size_t per_node,
                                                  std::size_t nodes) {
    double radius = 0.0;
    for (const GridPath* p : paths)
        for (std::size_t i = 0; i < p->size(); ++i) {
            double s = 0.0;
            for (double v : p->row(i)) s += v * v;
            radius = std::max(radius, std::sqrt(s));
        }
    radius *= 2.0;
    std::vector<std::vector<double>> cloud;
    Rng rng(0xc10d);
    for (const GridPath* p : paths) {
        const std::size_t stride = std::max<std::size_t>(1, p->grid().cells() / nodes);
        for (std::size_t i = 0; i < p->size(); i += stride) {
            std::vector<double> y(p->row(i).begin(), p->row(i).end());
            cloud.push_back(y);
            for (std::size_t k = 0; k < per_node; ++k) {
                std::vector<double> u(y.size());
                double s = 0.0;
                for (auto& v : u) {
                    v = rng.normal();
                    s += v * v;
                }
                const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(y.size())) / std::sqrt(s);
                for (std::size_t c = 0; c < y.size(); ++c) u[c] = y[c] + r * u[c];
                cloud.push_back(std::move(u));
            }
        }
    }
    return cloud;
}

StabilityReport ito_lyons_probe_young(const VectorField& F1, const VectorField& F2, const GridPath& X1,
                                      const GridPath& X2, const std::vector<double>& y1,
                                      const std::vector<double>& y2, const BesovParams& params) {
    const YoungOdeResult s1 = young_ode_solve(F1, X1, y1, params);
    const YoungOdeResult s2 = young_ode_solve(F2, X2, y2, params);
    const double out = besov_seminorm(s1.Y - s2.Y, params);
    double dy = 0.0;
    for (std::size_t c = 0; c < y1.size(); ++c) dy += (y1[c] - y2[c]) * (y1[c] - y2[c]);
    const auto cloud = trajectory_cloud({&s1.Y, &s2.Y});
    const double in = std::sqrt(dy) + besov_seminorm(X1 - X2, params) + field_distance_proxy(F1, F2, cloud);
    return {out, in, (out == 0.0 && in == 0.0) ? 0.0 : out / in};
}

}  // namespace besov_rough
