#include "besov_rough/rough.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "besov_rough/errors.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/sewing.hpp"

namespace besov_rough {

namespace {

std::size_t level_dim(int n, int k) {
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

// Fills a full tensor buffer (scalar part 1) with the entries of X at (i, j).
void element_into(const RoughPath& X, std::size_t i, std::size_t j, double* buf) {
    buf[0] = 1.0;
    for (int k = 1; k <= X.depth(); ++k) X.level(k).get(i, j, buf + tensor_level_offset(X.base_dim(), k));
}

// out^(k) += a^(j) (*) b^(k - j), a and b are single-level blocks.
void outer_add(const double* a, std::size_t sa, const double* b, std::size_t sb, double* out) {
    for (std::size_t I = 0; I < sa; ++I) {
        const double ai = a[I];
        if (ai == 0.0) continue;
        double* row = out + I * sb;
        for (std::size_t J = 0; J < sb; ++J) row[J] += ai * b[J];
    }
}

}  // namespace

RoughPath::RoughPath(int n, int N, std::vector<TwoParamField> levels, BesovParams params)
    : n_(n), N_(N), levels_(std::move(levels)), params_(params) {
    if (n < 1 || n > Tensor::kMaxDim || N < 1 || N > Tensor::kMaxDepth)
        throw std::invalid_argument("rough path dimensions out of range (n <= 4, N <= 4)");
    if (levels_.size() != static_cast<std::size_t>(N)) throw std::invalid_argument("rough path needs N level fields");
    for (int k = 1; k <= N; ++k) {
        if (levels_[k - 1].dim() != level_dim(n, k)) throw std::invalid_argument("level field has wrong dimension");
        if (!(levels_[k - 1].grid() == levels_[0].grid())) throw std::invalid_argument("level grids differ");
    }
}

RoughPath RoughPath::from_signature(const UniformGrid& grid, int n, int N, std::vector<double> signature,
                                    BesovParams params, TwoParamField::Mode mode) {
    const std::size_t ts = tensor_size(n, N);
    if (signature.size() != grid.size() * ts) throw std::invalid_argument("signature size does not match grid");
    struct Sig {
        std::vector<double> S, Sinv;
    };
    auto sig = std::make_shared<Sig>();
    sig->S = std::move(signature);
    sig->Sinv.resize(sig->S.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Tensor t(n, N);
        std::copy(sig->S.begin() + static_cast<std::ptrdiff_t>(i * ts),
                  sig->S.begin() + static_cast<std::ptrdiff_t>((i + 1) * ts), t.data().begin());
        const Tensor ti = tensor_inv(t);
        std::copy(ti.data().begin(), ti.data().end(), sig->Sinv.begin() + static_cast<std::ptrdiff_t>(i * ts));
    }
    std::vector<TwoParamField> levels;
    for (int k = 1; k <= N; ++k) {
        const std::size_t dk = level_dim(n, k);
        levels.push_back(TwoParamField::from_function(
            grid, dk,
            [sig, n, k, ts, dk](std::size_t s, std::size_t t, double* out) {
                std::fill(out, out + dk, 0.0);
                const double* a = sig->Sinv.data() + s * ts;
                const double* b = sig->S.data() + t * ts;
                for (int j = 0; j <= k; ++j)
                    outer_add(a + tensor_level_offset(n, j), level_dim(n, j), b + tensor_level_offset(n, k - j),
                              level_dim(n, k - j), out);
            },
            mode));
    }
    return RoughPath(n, N, std::move(levels), params);
}

Tensor RoughPath::element(std::size_t i, std::size_t j) const {
    Tensor t(n_, N_);
    element_into(*this, i, j, t.data().data());
    return t;
}

GridPath RoughPath::path() const {
    GridPath x(grid(), static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < x.size(); ++i) level(1).get(0, i, x.row(i).data());
    return x;
}

RoughPath RoughPath::slice(std::size_t start, std::size_t len) const {
    std::vector<TwoParamField> lv;
    for (const auto& f : levels_) lv.push_back(f.slice(start, len));
    return RoughPath(n_, N_, std::move(lv), params_);
}

RoughPath RoughPath::materialize() const {
    std::vector<TwoParamField> lv;
    for (const auto& f : levels_) lv.push_back(f.materialize());
    return RoughPath(n_, N_, std::move(lv), params_);
}

RoughPath RoughPath::truncate(int N) const {
    if (N < 1 || N > N_) throw std::invalid_argument("truncation level out of range");
    return RoughPath(n_, N, std::vector<TwoParamField>(levels_.begin(), levels_.begin() + N), params_);
}

RoughPath canonical_lift(const GridPath& x, int N, LiftFlavor flavor, const BesovParams& params,
                         TwoParamField::Mode mode) {
    const int n = static_cast<int>(x.dim());
    const std::size_t ts = tensor_size(n, N);
    std::vector<double> S(x.size() * ts, 0.0);
    S[0] = 1.0;
    std::vector<double> dx(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        for (int c = 0; c < n; ++c) dx[c] = x(i + 1, c) - x(i, c);
        Tensor step = Tensor::one(n, N);
        if (flavor == LiftFlavor::stratonovich) {
            step = Tensor::exp(dx.data(), n, N);
        } else {
            std::copy(dx.begin(), dx.end(), step.level(1));
        }
        tensor_mul_into(S.data() + i * ts, step.data().data(), S.data() + (i + 1) * ts, n, N);
    }
    return RoughPath::from_signature(x.grid(), n, N, std::move(S), params, mode);
}

RoughPath dilate(const RoughPath& X, double lambda) {
    std::vector<TwoParamField> lv;
    double f = 1.0;
    for (int k = 1; k <= X.depth(); ++k) {
        f *= lambda;
        lv.push_back(X.level(k).scaled(f));
    }
    return RoughPath(X.base_dim(), X.depth(), std::move(lv), X.params());
}

double rough_besov_norm(const RoughPath& X) {
    const BesovParams& P = X.params();
    double s = 0.0;
    for (int k = 1; k <= X.depth(); ++k)
        s += std::pow(two_param_norm(X.level(k), k * P.alpha, P.p / k, P.q / k), 1.0 / k);
    return s;
}

double rough_metric(const RoughPath& X, const RoughPath& Y) {
    if (X.depth() != Y.depth() || X.base_dim() != Y.base_dim()) throw std::invalid_argument("rough path shapes differ");
    const BesovParams& P = X.params();
    double s = 0.0;
    for (int k = 1; k <= X.depth(); ++k) s += two_param_metric(X.level(k), Y.level(k), k * P.alpha, P.p / k, P.q / k);
    return s;
}

double chen_residual(const RoughPath& X, std::size_t budget, std::uint64_t seed) {
    const int n = X.base_dim(), N = X.depth();
    const std::size_t ts = tensor_size(n, N);
    const std::size_t C = X.grid().cells();
    std::vector<double> a(ts), b(ts), c(ts), prod(ts);
    double worst = 0.0;
    auto check = [&](std::size_t s, std::size_t t, std::size_t u) {
        element_into(X, s, t, a.data());
        element_into(X, t, u, b.data());
        element_into(X, s, u, c.data());
        tensor_mul_into(a.data(), b.data(), prod.data(), n, N);
        for (int k = 1; k <= N; ++k) {
            const std::size_t off = tensor_level_offset(n, k), len = level_dim(n, k);
            double e = 0.0;
            for (std::size_t q = 0; q < len; ++q) e += (prod[off + q] - c[off + q]) * (prod[off + q] - c[off + q]);
            worst = std::max(worst, std::sqrt(e));
        }
    };
    if (C <= 64) {
        for (std::size_t s = 0; s <= C; ++s)
            for (std::size_t t = s; t <= C; ++t)
                for (std::size_t u = t; u <= C; ++u) check(s, t, u);
        return worst;
    }
    // Chen on all anchored triples (0, t, u) forces X_tu = X_0t^-1 X_0u and hence Chen everywhere.
    for (std::size_t t = 0; t <= C; ++t)
        for (std::size_t u = t; u <= C; ++u) check(0, t, u);
    Rng rng(seed);
    for (std::size_t k = 0; k < budget; ++k) {
        std::size_t v[3] = {rng.below(C + 1), rng.below(C + 1), rng.below(C + 1)};
        std::sort(v, v + 3);
        check(v[0], v[1], v[2]);
    }
    return worst;
}

RoughPath lyons_extend(const RoughPath& X, int N) {
    if (N <= X.depth()) return X.truncate(N);
    if (N > Tensor::kMaxDepth) throw std::invalid_argument("extension beyond level 4 is not supported");
    const BesovParams& P = X.params();
    const int M = X.depth();
    if (!(P.alpha > 1.0 / (M + 1) + 1e-12))
        throw RegimeError("Lyons extension requires alpha > 1/(M+1); at the endpoint alpha = 1/(M+1) the next level is "
                          "not determined by the lower ones");
    if (!(P.alpha > 1.0 / P.p)) throw RegimeError("Lyons extension requires alpha > 1/p");
    const int n = X.base_dim();
    const std::size_t C1 = X.grid().size();
    // Rows X^(j)_{0s} for j = 1..M.
    auto rows = std::make_shared<std::vector<std::vector<double>>>(static_cast<std::size_t>(M + 1));
    for (int j = 1; j <= M; ++j) {
        auto& r = (*rows)[j];
        const std::size_t dj = level_dim(n, j);
        r.resize(C1 * dj);
        for (std::size_t s = 0; s < C1; ++s) X.level(j).get(0, s, r.data() + s * dj);
    }
    const std::size_t dn = level_dim(n, M + 1);
    const RoughPath base = X;
    const TwoParamField A = TwoParamField::from_function(
        X.grid(), dn,
        [base, rows, M, n, dn](std::size_t s, std::size_t t, double* out) {
            std::fill(out, out + dn, 0.0);
            thread_local std::vector<double> buf;
            for (int k = 1; k <= M; ++k) {
                const int j = M - k + 1;
                const std::size_t dj = level_dim(n, j), dk = level_dim(n, k);
                buf.resize(dk);
                base.level(k).get(s, t, buf.data());
                outer_add((*rows)[j].data() + s * dj, dj, buf.data(), dk, out);
            }
        },
        TwoParamField::Mode::lazy);
    SewingInput in;
    in.germ = A;
    in.gamma = (M + 1) * P.alpha;
    in.p2 = P.p / (M + 1);
    in.q2 = P.q / (M + 1);
    in.diagnostics = false;
    in.remainder_norm = false;
    check_sewing_regime(in);
    const GridPath Z = sew_integral(A);
    std::vector<TwoParamField> lv = X.levels();
    lv.push_back(sew_remainder(Z, A));
    return lyons_extend(RoughPath(n, M + 1, std::move(lv), P), N);
}

GridPath brownian_path(int n, const UniformGrid& grid, std::uint64_t seed) {
    GridPath w(grid, static_cast<std::size_t>(n));
    Rng rng(seed);
    const double sd = std::sqrt(grid.mesh());
    for (std::size_t i = 1; i < w.size(); ++i)
        for (int c = 0; c < n; ++c) w(i, c) = w(i - 1, c) + sd * rng.normal();
    return w;
}

RoughPath brownian_lift(int n, const UniformGrid& grid, std::uint64_t seed, LiftFlavor flavor,
                        const BesovParams& params, TwoParamField::Mode mode) {
    const GridPath w = brownian_path(n, grid, seed);
    const std::size_t ts = tensor_size(n, 2);
    std::vector<double> S(w.size() * ts, 0.0);
    S[0] = 1.0;
    std::vector<double> step(ts, 0.0);
    step[0] = 1.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        for (int c = 0; c < n; ++c) step[1 + c] = w(i + 1, c) - w(i, c);
        tensor_mul_into(S.data() + i * ts, step.data(), S.data() + (i + 1) * ts, n, 2);
    }
    if (flavor == LiftFlavor::stratonovich) {
        // Exact bracket: S^(2)_t += t/2 Id.
        for (std::size_t i = 0; i < w.size(); ++i)
            for (int c = 0; c < n; ++c) S[i * ts + 1 + n + c * n + c] += 0.5 * grid.time(i);
    }
    return RoughPath::from_signature(grid, n, 2, std::move(S), params, mode);
}

FbmSampler::FbmSampler(double hurst, const UniformGrid& grid) : H_(hurst), grid_(grid) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw RegimeError("Hurst parameter must lie in (0, 1)");
    if (grid.level() > 12) throw RegimeError("exact fBm factorization is limited to level 12");
    const auto C = static_cast<Eigen::Index>(grid.cells());
    Eigen::MatrixXd cov(C, C);
    for (Eigen::Index i = 0; i < C; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double s = grid.time(static_cast<std::size_t>(i + 1)), t = grid.time(static_cast<std::size_t>(j + 1));
            const double v = 0.5 * (std::pow(s, 2 * hurst) + std::pow(t, 2 * hurst) - std::pow(std::abs(s - t), 2 * hurst));
            cov(i, j) = v;
            cov(j, i) = v;
        }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw NumericalError("fBm covariance factorization failed");
    const Eigen::MatrixXd Lm = llt.matrixL();
    auto f = std::make_shared<std::vector<double>>(static_cast<std::size_t>(C * C), 0.0);
    for (Eigen::Index i = 0; i < C; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) (*f)[static_cast<std::size_t>(i * C + j)] = Lm(i, j);
    factor_ = f;
}

GridPath FbmSampler::sample(std::uint64_t seed, std::size_t dim) const {
    const std::size_t C = grid_.cells();
    GridPath out(grid_, dim);
    Rng rng(seed);
    std::vector<double> z(C);
    for (std::size_t c = 0; c < dim; ++c) {
        for (auto& v : z) v = rng.normal();
        for (std::size_t i = 0; i < C; ++i) {
            const double* row = factor_->data() + i * C;
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
            out(i + 1, c) = s;
        }
    }
    return out;
}

GridPath fbm_path(double hurst, const UniformGrid& grid, std::uint64_t seed, std::size_t dim) {
    return FbmSampler(hurst, grid).sample(seed, dim);
}

InequalityReport check_rough_embedding(const RoughPath& X) {
    const BesovParams& P = X.params();
    const double beta = P.alpha - 1.0 / P.p;
    if (!(beta > 0.0)) throw RegimeError("rough Holder embedding requires alpha > 1/p");
    double lhs = 0.0;
    for (int k = 1; k <= X.depth(); ++k) lhs += std::pow(holder_norm(X.level(k), k * beta), 1.0 / k);
    const double rhs = rough_besov_norm(X);
    return {lhs, rhs, (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs};
}

InequalityReport rough_interpolation_check(const RoughPath& X, int k, int j) {
    if (!(j >= 1 && j < k && k <= X.depth())) throw std::invalid_argument("need 1 <= j < k <= N");
    const BesovParams& P = X.params();
    const double lhs = two_param_norm(X.level(k), j * P.alpha, P.p / j, P.q / j);
    const double T = X.grid().horizon();
    const double rhs = std::pow(T, (k - j) * (P.alpha - 1.0 / P.p)) * std::pow(rough_besov_norm(X.truncate(k)), k);
    return {lhs, rhs, (lhs == 0.0 && rhs == 0.0) ? 0.0 : lhs / rhs};
}

std::vector<CampanatoLevel> rough_campanato_profile(const RoughPath& X, int k) {
    const TwoParamField& F = X.level(k);
    const UniformGrid& g = X.grid();
    const std::size_t C = g.cells(), d = F.dim();
    const double mesh = g.mesh();
    std::vector<double> buf(d);
    std::vector<CampanatoLevel> out;
    for (int lev = 0; lev < g.level(); ++lev) {
        const std::size_t K = C >> lev;
        const double h = static_cast<double>(K) * mesh;
        double best = 0.0;
        for (std::size_t a = 0; a + K <= C; a += K) {
            double acc = 0.0;
            for (std::size_t s = a; s < a + K; ++s)
                for (std::size_t t = s + 1; t <= a + K; ++t) {
                    F.get(s, t, buf.data());
                    double e = 0.0;
                    for (double v : buf) e += v * v;
                    acc += std::sqrt(e);
                }
            best = std::max(best, acc * mesh * mesh / (h * h));
        }
        out.push_back({h, best});
    }
    return out;
}

}  // namespace besov_rough
