#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace besov_rough {

enum class Smoothness { C1delta, C2, C2delta, C3, Cinf };

/// Map f: R^m -> R^{rows x cols} with analytic first and (optionally) second derivatives.
/// Output index is a * cols + j; the Jacobian is out_dim x m; the Hessian is out_dim x m x m.
class VectorField {
public:
    using Eval = std::function<void(const double* y, double* out)>;

    VectorField() = default;
    VectorField(std::size_t in_dim, std::size_t rows, std::size_t cols, Eval f, Eval df, Eval d2f = {},
                Smoothness smoothness = Smoothness::Cinf, double holder_delta = 1.0);

    std::size_t in_dim() const { return m_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t out_dim() const { return rows_ * cols_; }
    Smoothness smoothness() const { return smoothness_; }
    double holder_delta() const { return delta_; }
    bool has_hessian() const { return static_cast<bool>(d2f_); }

    void eval(const double* y, double* out) const { f_(y, out); }
    void jacobian(const double* y, double* out) const { df_(y, out); }
    void hessian(const double* y, double* out) const;

    std::vector<double> eval(const std::vector<double>& y) const;
    std::vector<double> jacobian(const std::vector<double>& y) const;

    /// a * f.
    VectorField scaled(double a) const;

    static VectorField zero(std::size_t m, std::size_t n);
    static VectorField constant(std::size_t m, std::size_t n, std::vector<double> value);
    /// f_j(y) = A_j y + b_j; mats[j] is m x m row-major, offsets[j] in R^m (may be empty).
    static VectorField linear(std::size_t m, std::vector<std::vector<double>> mats,
                              std::vector<std::vector<double>> offsets = {});
    /// f(y) = y componentwise squared, as a map R^m -> R^{m x 1}.
    static VectorField square(std::size_t m);

private:
    std::size_t m_ = 0, rows_ = 0, cols_ = 0;
    Eval f_, df_, d2f_;
    Smoothness smoothness_ = Smoothness::Cinf;
    double delta_ = 1.0;
};

/// Builtin fields on R^m driven by R^n:
///   linear   f_j(y) = y
///   rotation (m = n = 2) f_1(y) = J y, f_2(y) = diag(1/2, -1/2) y, J the quarter turn
///   sigmoid-saturated  f^a_j(y) = tanh(sum_b W_{ajb} y_b + c_{aj}), bounded with bounded derivatives
VectorField builtin_field(const std::string& name, std::size_t m, std::size_t n);

/// Parses {"type": "linear", "A": [[[...]]...], "b": [[...]...]} or {"type": "builtin", "name": ...}.
VectorField field_from_json_text(const std::string& text, std::size_t m, std::size_t n);

/// Max relative error between the analytic Jacobian and central differences at `points` random points.
double derivative_consistency(const VectorField& f, std::size_t points = 20, double step = 1e-6,
                              unsigned long long seed = 7);

/// Max over the cloud of value, Jacobian and (when both have them) Hessian gaps.
double field_distance_proxy(const VectorField& f1, const VectorField& f2, const std::vector<std::vector<double>>& cloud);

}  // namespace besov_rough
