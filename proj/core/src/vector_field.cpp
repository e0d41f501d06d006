#include "besov_rough/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "besov_rough/errors.hpp"
#include "besov_rough/random.hpp"

namespace besov_rough {

VectorField::VectorField(std::size_t in_dim, std::size_t rows, std::size_t cols, Eval f, Eval df, Eval d2f,
                         Smoothness smoothness, double holder_delta)
    : m_(in_dim), rows_(rows), cols_(cols), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)),
      smoothness_(smoothness), delta_(holder_delta) {}

void VectorField::hessian(const double* y, double* out) const {
    if (!d2f_) throw RegimeError("vector field has no second derivative");
    d2f_(y, out);
}

std::vector<double> VectorField::eval(const std::vector<double>& y) const {
    std::vector<double> out(out_dim());
    f_(y.data(), out.data());
    return out;
}

std::vector<double> VectorField::jacobian(const std::vector<double>& y) const {
    std::vector<double> out(out_dim() * m_);
    df_(y.data(), out.data());
    return out;
}

VectorField VectorField::scaled(double a) const {
    const VectorField base = *this;
    const std::size_t o = out_dim(), m = m_;
    Eval d2;
    if (d2f_)
        d2 = [base, a, o, m](const double* y, double* out) {
            base.d2f_(y, out);
            for (std::size_t k = 0; k < o * m * m; ++k) out[k] *= a;
        };
    return VectorField(
        m_, rows_, cols_,
        [base, a, o](const double* y, double* out) {
            base.f_(y, out);
            for (std::size_t k = 0; k < o; ++k) out[k] *= a;
        },
        [base, a, o, m](const double* y, double* out) {
            base.df_(y, out);
            for (std::size_t k = 0; k < o * m; ++k) out[k] *= a;
        },
        d2, smoothness_, delta_);
}

VectorField VectorField::zero(std::size_t m, std::size_t n) { return constant(m, n, std::vector<double>(m * n, 0.0)); }

VectorField VectorField::constant(std::size_t m, std::size_t n, std::vector<double> value) {
    if (value.size() != m * n) throw std::invalid_argument("constant field size mismatch");
    auto v = std::make_shared<const std::vector<double>>(std::move(value));
    const std::size_t o = m * n;
    return VectorField(
        m, m, n, [v](const double*, double* out) { std::copy(v->begin(), v->end(), out); },
        [o, m](const double*, double* out) { std::fill(out, out + o * m, 0.0); },
        [o, m](const double*, double* out) { std::fill(out, out + o * m * m, 0.0); });
}

VectorField VectorField::linear(std::size_t m, std::vector<std::vector<double>> mats,
                                std::vector<std::vector<double>> offsets) {
    const std::size_t n = mats.size();
    for (const auto& A : mats)
        if (A.size() != m * m) throw std::invalid_argument("linear field matrix must be m x m");
    if (offsets.empty()) offsets.assign(n, std::vector<double>(m, 0.0));
    if (offsets.size() != n) throw std::invalid_argument("linear field offsets must match the driver dimension");
    auto A = std::make_shared<const std::vector<std::vector<double>>>(std::move(mats));
    auto b = std::make_shared<const std::vector<std::vector<double>>>(std::move(offsets));
    const std::size_t o = m * n;
    return VectorField(
        m, m, n,
        [A, b, m, n](const double* y, double* out) {
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t j = 0; j < n; ++j) {
                    double s = (*b)[j][a];
                    for (std::size_t c = 0; c < m; ++c) s += (*A)[j][a * m + c] * y[c];
                    out[a * n + j] = s;
                }
        },
        [A, m, n](const double*, double* out) {
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t c = 0; c < m; ++c) out[(a * n + j) * m + c] = (*A)[j][a * m + c];
        },
        [o, m](const double*, double* out) { std::fill(out, out + o * m * m, 0.0); });
}

VectorField VectorField::square(std::size_t m) {
    return VectorField(
        m, m, 1,
        [m](const double* y, double* out) {
            for (std::size_t a = 0; a < m; ++a) out[a] = y[a] * y[a];
        },
        [m](const double* y, double* out) {
            std::fill(out, out + m * m, 0.0);
            for (std::size_t a = 0; a < m; ++a) out[a * m + a] = 2.0 * y[a];
        },
        [m](const double*, double* out) {
            std::fill(out, out + m * m * m, 0.0);
            for (std::size_t a = 0; a < m; ++a) out[(a * m + a) * m + a] = 2.0;
        });
}

namespace {

VectorField sigmoid_field(std::size_t m, std::size_t n) {
    const std::size_t o = m * n;
    auto W = std::make_shared<std::vector<double>>(o * m);
    auto c = std::make_shared<std::vector<double>>(o);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < n; ++j) {
            (*c)[a * n + j] = 0.1 * std::sin(static_cast<double>(a) - static_cast<double>(j));
            for (std::size_t b = 0; b < m; ++b)
                (*W)[(a * n + j) * m + b] = 0.5 * std::cos(1.0 + static_cast<double>(a + 2 * j + 3 * b));
        }
    auto pre = [W, c, m](const double* y, std::size_t k) {
        double s = (*c)[k];
        for (std::size_t b = 0; b < m; ++b) s += (*W)[k * m + b] * y[b];
        return s;
    };
    return VectorField(
        m, m, n,
        [pre, o](const double* y, double* out) {
            for (std::size_t k = 0; k < o; ++k) out[k] = std::tanh(pre(y, k));
        },
        [pre, W, o, m](const double* y, double* out) {
            for (std::size_t k = 0; k < o; ++k) {
                const double t = std::tanh(pre(y, k));
                for (std::size_t b = 0; b < m; ++b) out[k * m + b] = (1.0 - t * t) * (*W)[k * m + b];
            }
        },
        [pre, W, o, m](const double* y, double* out) {
            for (std::size_t k = 0; k < o; ++k) {
                const double t = std::tanh(pre(y, k));
                const double s2 = -2.0 * t * (1.0 - t * t);
                for (std::size_t b = 0; b < m; ++b)
                    for (std::size_t e = 0; e < m; ++e)
                        out[(k * m + b) * m + e] = s2 * (*W)[k * m + b] * (*W)[k * m + e];
            }
        },
        Smoothness::Cinf);
}

}  // namespace

VectorField builtin_field(const std::string& name, std::size_t m, std::size_t n) {
    if (name == "linear") {
        std::vector<double> I(m * m, 0.0);
        for (std::size_t a = 0; a < m; ++a) I[a * m + a] = 1.0;
        return VectorField::linear(m, std::vector<std::vector<double>>(n, I));
    }
    if (name == "rotation") {
        if (m != 2 || n != 2) throw RegimeError("rotation field needs state and driver dimension 2");
        return VectorField::linear(2, {{0.0, -1.0, 1.0, 0.0}, {0.5, 0.0, 0.0, -0.5}});
    }
    if (name == "sigmoid-saturated") return sigmoid_field(m, n);
    if (name == "zero") return VectorField::zero(m, n);
    throw std::invalid_argument("unknown builtin field: " + name);
}

VectorField field_from_json_text(const std::string& text, std::size_t m, std::size_t n) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("field JSON: ") + e.what());
    }
    const std::string type = j.value("type", "linear");
    if (type == "builtin") return builtin_field(j.at("name").get<std::string>(), m, n);
    if (type != "linear") throw IoError("field JSON: unknown type " + type);
    std::vector<std::vector<double>> mats, offs;
    for (const auto& Aj : j.at("A")) {
        std::vector<double> flat;
        for (const auto& row : Aj)
            for (const auto& x : row) flat.push_back(x.get<double>());
        mats.push_back(std::move(flat));
    }
    if (j.contains("b"))
        for (const auto& bj : j.at("b")) offs.push_back(bj.get<std::vector<double>>());
    if (mats.size() != n) throw IoError("field JSON: need one matrix per driver coordinate");
    return VectorField::linear(m, std::move(mats), std::move(offs));
}

double derivative_consistency(const VectorField& f, std::size_t points, double step, unsigned long long seed) {
    Rng rng(seed);
    const std::size_t m = f.in_dim(), o = f.out_dim();
    std::vector<double> y(m), yp(m), ym(m), fp(o), fm(o), J(o * m);
    double worst = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        for (auto& v : y) v = rng.normal();
        f.jacobian(y.data(), J.data());
        for (std::size_t b = 0; b < m; ++b) {
            yp = y;
            ym = y;
            yp[b] += step;
            ym[b] -= step;
            f.eval(yp.data(), fp.data());
            f.eval(ym.data(), fm.data());
            for (std::size_t a = 0; a < o; ++a) {
                const double fd = (fp[a] - fm[a]) / (2.0 * step);
                const double an = J[a * m + b];
                worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
            }
        }
    }
    return worst;
}

double field_distance_proxy(const VectorField& f1, const VectorField& f2,
                            const std::vector<std::vector<double>>& cloud) {
    if (f1.in_dim() != f2.in_dim() || f1.out_dim() != f2.out_dim())
        throw std::invalid_argument("field shapes differ");
    const std::size_t m = f1.in_dim(), o = f1.out_dim();
    const bool hess = f1.has_hessian() && f2.has_hessian();
    std::vector<double> a(o * m * m), b(o * m * m);
    double worst = 0.0;
    auto gap = [&](std::size_t len) {
        double s = 0.0;
        for (std::size_t k = 0; k < len; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
        worst = std::max(worst, std::sqrt(s));
    };
    for (const auto& y : cloud) {
        f1.eval(y.data(), a.data());
        f2.eval(y.data(), b.data());
        gap(o);
        f1.jacobian(y.data(), a.data());
        f2.jacobian(y.data(), b.data());
        gap(o * m);
        if (hess) {
            f1.hessian(y.data(), a.data());
            f2.hessian(y.data(), b.data());
            gap(o * m * m);
        }
    }
    return worst;
}

}  // namespace besov_rough
