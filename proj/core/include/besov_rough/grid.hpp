#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace besov_rough {

/// Uniform dyadic grid t_i = i * T / 2^L, i = 0..2^L.
class UniformGrid {
public:
    UniformGrid() = default;
    UniformGrid(double horizon, int level);

    double horizon() const { return T_; }
    int level() const { return L_; }
    std::size_t cells() const { return std::size_t{1} << L_; }
    std::size_t size() const { return cells() + 1; }
    double mesh() const { return T_ / static_cast<double>(cells()); }
    double time(std::size_t i) const { return static_cast<double>(i) * T_ / static_cast<double>(cells()); }

    UniformGrid refine(int k) const { return UniformGrid(T_, L_ + k); }
    UniformGrid coarsen(int k) const;
    /// The sub-grid on [t_start, t_start + len*mesh]; len must be a power of two.
    UniformGrid block(std::size_t len) const;

    bool operator==(const UniformGrid& o) const { return T_ == o.T_ && L_ == o.L_; }

private:
    double T_ = 1.0;
    int L_ = 0;
};

/// Path sampled at every grid node, values in R^m stored row-major.
class GridPath {
public:
    GridPath() = default;
    GridPath(UniformGrid grid, std::size_t dim);
    GridPath(UniformGrid grid, std::size_t dim, std::vector<double> values);

    template <class F>
    static GridPath sample(const UniformGrid& grid, std::size_t dim, F&& fn) {
        GridPath out(grid, dim);
        for (std::size_t i = 0; i < grid.size(); ++i) fn(grid.time(i), out.row(i));
        return out;
    }
    static GridPath sample_scalar(const UniformGrid& grid, const std::function<double(double)>& fn);

    const UniformGrid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return grid_.size(); }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::span<double> row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }
    double operator()(std::size_t i, std::size_t c = 0) const { return values_[i * dim_ + c]; }
    double& operator()(std::size_t i, std::size_t c = 0) { return values_[i * dim_ + c]; }
    const std::vector<double>& values() const { return values_; }

    /// Every 2^k-th node, on the level L-k grid.
    GridPath subsample(int k) const;
    /// Piecewise-linear interpolation onto the level L+k grid.
    GridPath refine(int k) const;
    /// Nodes start..start+len as a path on grid().block(len).
    GridPath slice(std::size_t start, std::size_t len) const;

    GridPath operator-(const GridPath& o) const;
    GridPath operator+(const GridPath& o) const;
    GridPath scaled(double a) const;

private:
    UniformGrid grid_;
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

/// Two-parameter field A[i][j], 0 <= i <= j <= 2^L, with values in R^m.
/// Eager fields hold upper-triangular storage; lazy fields call an evaluator.
class TwoParamField {
public:
    using Evaluator = std::function<void(std::size_t, std::size_t, double*)>;
    enum class Mode { automatic, eager, lazy };

    /// Levels below this are always materialized by Mode::automatic.
    static constexpr int kLazyLevel = 12;

    TwoParamField() = default;
    /// Zero-initialized eager field.
    TwoParamField(UniformGrid grid, std::size_t dim);
    static TwoParamField from_function(UniformGrid grid, std::size_t dim, Evaluator fn,
                                       Mode mode = Mode::automatic);

    const UniformGrid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    bool is_lazy() const { return !data_; }

    void get(std::size_t i, std::size_t j, double* out) const {
        if (data_) {
            const double* p = data_->data() + offset(i, j);
            for (std::size_t c = 0; c < dim_; ++c) out[c] = p[c];
        } else {
            eval_(i, j, out);
        }
    }
    std::vector<double> at(std::size_t i, std::size_t j) const;
    double value(std::size_t i, std::size_t j, std::size_t c = 0) const;

    /// Writable entry; only valid on eager fields (copy-on-write).
    double* entry(std::size_t i, std::size_t j);

    TwoParamField materialize() const;
    /// Restriction to nodes start..start+len as a field on grid().block(len).
    TwoParamField slice(std::size_t start, std::size_t len) const;
    TwoParamField scaled(double a) const;
    TwoParamField operator-(const TwoParamField& o) const;
    TwoParamField operator+(const TwoParamField& o) const;

private:
    std::size_t offset(std::size_t i, std::size_t j) const {
        const std::size_t n = grid_.size();
        return (i * n - (i * (i + 1)) / 2 + j) * dim_;
    }

    UniformGrid grid_;
    std::size_t dim_ = 0;
    std::shared_ptr<std::vector<double>> data_;
    Evaluator eval_;
};

/// delta f: A[i][j] = f_j - f_i.
TwoParamField delta(const GridPath& path, TwoParamField::Mode mode = TwoParamField::Mode::automatic);

/// A[i][j] - A[i][k] - A[k][j] for i <= k <= j.
std::vector<double> delta2(const TwoParamField& field, std::size_t i, std::size_t k, std::size_t j);
void delta2(const TwoParamField& field, std::size_t i, std::size_t k, std::size_t j, double* out,
            double* scratch);

}  // namespace besov_rough
