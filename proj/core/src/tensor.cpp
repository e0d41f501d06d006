#include "besov_rough/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace besov_rough {

namespace {
std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
}  // namespace

std::size_t tensor_size(int n, int N) {
    std::size_t s = 0;
    for (int k = 0; k <= N; ++k) s += ipow(static_cast<std::size_t>(n), k);
    return s;
}

std::size_t tensor_level_offset(int n, int k) { return tensor_size(n, k - 1); }

Tensor::Tensor(int n, int N) : n_(n), N_(N) {
    if (n < 1 || n > kMaxDim || N < 0 || N > kMaxDepth)
        throw std::invalid_argument("tensor dimensions out of range (n <= 4, N <= 4)");
    data_.assign(tensor_size(n, N), 0.0);
}

Tensor Tensor::one(int n, int N) {
    Tensor t(n, N);
    t.data_[0] = 1.0;
    return t;
}

Tensor Tensor::exp(const double* v, int n, int N) {
    Tensor t = one(n, N);
    if (N == 0) return t;
    std::copy(v, v + n, t.level(1));
    for (int k = 2; k <= N; ++k) {
        const double* prev = t.level(k - 1);
        double* cur = t.level(k);
        const std::size_t ps = t.level_size(k - 1);
        for (std::size_t I = 0; I < ps; ++I)
            for (int j = 0; j < n; ++j) cur[I * n + j] = prev[I] * v[j] / k;
    }
    return t;
}

std::size_t Tensor::level_size(int k) const { return ipow(static_cast<std::size_t>(n_), k); }
std::size_t Tensor::level_offset(int k) const { return tensor_level_offset(n_, k); }

void tensor_mul_into(const double* x, const double* y, double* out, int n, int N) {
    std::size_t off[Tensor::kMaxDepth + 2];
    std::size_t sz[Tensor::kMaxDepth + 2];
    off[0] = 0;
    sz[0] = 1;
    for (int k = 1; k <= N; ++k) {
        sz[k] = sz[k - 1] * static_cast<std::size_t>(n);
        off[k] = off[k - 1] + sz[k - 1];
    }
    for (int k = 0; k <= N; ++k) {
        double* o = out + off[k];
        std::fill(o, o + sz[k], 0.0);
        for (int j = 0; j <= k; ++j) {
            const double* a = x + off[j];
            const double* b = y + off[k - j];
            const std::size_t sb = sz[k - j];
            for (std::size_t I = 0; I < sz[j]; ++I) {
                const double ai = a[I];
                if (ai == 0.0) continue;
                double* row = o + I * sb;
                for (std::size_t J = 0; J < sb; ++J) row[J] += ai * b[J];
            }
        }
    }
}

Tensor tensor_mul(const Tensor& x, const Tensor& y) {
    if (x.base_dim() != y.base_dim() || x.depth() != y.depth()) throw std::invalid_argument("tensor shape mismatch");
    Tensor out(x.base_dim(), x.depth());
    tensor_mul_into(x.data().data(), y.data().data(), out.data().data(), x.base_dim(), x.depth());
    return out;
}

Tensor tensor_inv(const Tensor& x) {
    const double x0 = x.data()[0];
    if (x0 == 0.0) throw std::invalid_argument("tensor with zero scalar part is not invertible");
    const int n = x.base_dim(), N = x.depth();
    // x = x0 (1 + a) with a nilpotent; x^-1 = x0^-1 sum_k (-a)^k.
    Tensor a(n, N);
    for (std::size_t i = 1; i < x.size(); ++i) a.data()[i] = -x.data()[i] / x0;
    Tensor sum = Tensor::one(n, N), term = Tensor::one(n, N);
    for (int k = 1; k <= N; ++k) {
        term = tensor_mul(term, a);
        for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] += term.data()[i];
    }
    for (double& v : sum.data()) v /= x0;
    return sum;
}

Tensor tensor_dilate(const Tensor& x, double lambda) {
    Tensor out = x;
    double f = 1.0;
    for (int k = 1; k <= x.depth(); ++k) {
        f *= lambda;
        double* l = out.level(k);
        for (std::size_t i = 0; i < x.level_size(k); ++i) l[i] *= f;
    }
    return out;
}

double tensor_gauge(const Tensor& x) {
    double best = 0.0, fact = 1.0;
    for (int k = 1; k <= x.depth(); ++k) {
        fact *= k;
        const double* l = x.level(k);
        double s = 0.0;
        for (std::size_t i = 0; i < x.level_size(k); ++i) s += l[i] * l[i];
        best = std::max(best, std::pow(fact * std::sqrt(s), 1.0 / k));
    }
    return best;
}

double homogeneous_norm(const Tensor& x) { return 0.5 * (tensor_gauge(x) + tensor_gauge(tensor_inv(x))); }

double homogeneous_distance(const Tensor& x, const Tensor& y) { return homogeneous_norm(tensor_mul(tensor_inv(x), y)); }

}  // namespace besov_rough
