#pragma once

#include <cstddef>
#include <vector>

namespace besov_rough {

/// Element of the truncated tensor algebra over R^n up to level N, stored level by level
/// (level k is a dense row-major n^k block). Requires n <= 4 and N <= 4.
class Tensor {
public:
    static constexpr int kMaxDim = 4;
    static constexpr int kMaxDepth = 4;

    Tensor() = default;
    /// Zero element.
    Tensor(int n, int N);

    static Tensor one(int n, int N);
    /// exp(v) = (1, v, v^2/2!, ..., v^N/N!) for v in R^n.
    static Tensor exp(const double* v, int n, int N);

    int base_dim() const { return n_; }
    int depth() const { return N_; }
    std::size_t size() const { return data_.size(); }
    std::size_t level_size(int k) const;
    std::size_t level_offset(int k) const;
    double* level(int k) { return data_.data() + level_offset(k); }
    const double* level(int k) const { return data_.data() + level_offset(k); }
    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    int n_ = 0, N_ = 0;
    std::vector<double> data_;
};

/// Total number of components sum_{k=0..N} n^k.
std::size_t tensor_size(int n, int N);
std::size_t tensor_level_offset(int n, int k);

/// out = x (*) y truncated at level N; raw buffers of tensor_size(n, N).
void tensor_mul_into(const double* x, const double* y, double* out, int n, int N);

Tensor tensor_mul(const Tensor& x, const Tensor& y);
/// Neumann-series inverse; requires a nonzero scalar part.
Tensor tensor_inv(const Tensor& x);
Tensor tensor_dilate(const Tensor& x, double lambda);
/// N(x) = max_k (k! |x^(k)|)^(1/k) with Euclidean level norms.
double tensor_gauge(const Tensor& x);
/// (N(x) + N(x^-1)) / 2.
double homogeneous_norm(const Tensor& x);
/// homogeneous_norm(x^-1 (*) y).
double homogeneous_distance(const Tensor& x, const Tensor& y);

}  // namespace besov_rough
