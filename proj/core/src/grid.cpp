#include "besov_rough/grid.hpp"

#include <stdexcept>
#include <string>

namespace besov_rough {

UniformGrid::UniformGrid(double horizon, int level) : T_(horizon), L_(level) {
    if (!(horizon > 0.0)) throw std::invalid_argument("grid horizon must be positive");
    if (level < 0 || level > 30) throw std::invalid_argument("grid level out of range: " + std::to_string(level));
}

UniformGrid UniformGrid::coarsen(int k) const {
    if (k > L_) throw std::invalid_argument("cannot coarsen below level 0");
    return UniformGrid(T_, L_ - k);
}

UniformGrid UniformGrid::block(std::size_t len) const {
    if (len == 0 || (len & (len - 1)) != 0 || len > cells())
        throw std::invalid_argument("block length must be a power of two not exceeding the cell count");
    int l = 0;
    while ((std::size_t{1} << l) < len) ++l;
    return UniformGrid(mesh() * static_cast<double>(len), l);
}

GridPath::GridPath(UniformGrid grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_(grid.size() * dim, 0.0) {
    if (dim == 0) throw std::invalid_argument("path dimension must be positive");
}

GridPath::GridPath(UniformGrid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
    if (dim == 0) throw std::invalid_argument("path dimension must be positive");
    if (values_.size() != grid.size() * dim) throw std::invalid_argument("path value count does not match grid");
}

GridPath GridPath::sample_scalar(const UniformGrid& grid, const std::function<double(double)>& fn) {
    GridPath out(grid, 1);
    for (std::size_t i = 0; i < grid.size(); ++i) out(i) = fn(grid.time(i));
    return out;
}

GridPath GridPath::subsample(int k) const {
    GridPath out(grid_.coarsen(k), dim_);
    const std::size_t stride = std::size_t{1} << k;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t c = 0; c < dim_; ++c) out(i, c) = (*this)(i * stride, c);
    return out;
}

GridPath GridPath::refine(int k) const {
    GridPath out(grid_.refine(k), dim_);
    const std::size_t stride = std::size_t{1} << k;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t a = i / stride, r = i % stride;
        const double w = static_cast<double>(r) / static_cast<double>(stride);
        for (std::size_t c = 0; c < dim_; ++c) {
            const double lo = (*this)(a, c);
            out(i, c) = r == 0 ? lo : lo + w * ((*this)(a + 1, c) - lo);
        }
    }
    return out;
}

GridPath GridPath::slice(std::size_t start, std::size_t len) const {
    if (start + len > grid_.cells()) throw std::invalid_argument("slice exceeds grid");
    GridPath out(grid_.block(len), dim_);
    std::copy(values_.begin() + static_cast<std::ptrdiff_t>(start * dim_),
              values_.begin() + static_cast<std::ptrdiff_t>((start + len + 1) * dim_), out.values_.begin());
    return out;
}

GridPath GridPath::operator-(const GridPath& o) const {
    if (!(grid_ == o.grid_) || dim_ != o.dim_) throw std::invalid_argument("path grid or dimension mismatch");
    GridPath out(grid_, dim_);
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = values_[k] - o.values_[k];
    return out;
}

GridPath GridPath::operator+(const GridPath& o) const {
    if (!(grid_ == o.grid_) || dim_ != o.dim_) throw std::invalid_argument("path grid or dimension mismatch");
    GridPath out(grid_, dim_);
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = values_[k] + o.values_[k];
    return out;
}

GridPath GridPath::scaled(double a) const {
    GridPath out(grid_, dim_);
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = a * values_[k];
    return out;
}

TwoParamField::TwoParamField(UniformGrid grid, std::size_t dim)
    : grid_(grid), dim_(dim) {
    const std::size_t n = grid.size();
    data_ = std::make_shared<std::vector<double>>(n * (n + 1) / 2 * dim, 0.0);
}

TwoParamField TwoParamField::from_function(UniformGrid grid, std::size_t dim, Evaluator fn, Mode mode) {
    const bool eager = mode == Mode::eager || (mode == Mode::automatic && grid.level() < kLazyLevel);
    TwoParamField out;
    out.grid_ = grid;
    out.dim_ = dim;
    out.eval_ = std::move(fn);
    return eager ? out.materialize() : out;
}

std::vector<double> TwoParamField::at(std::size_t i, std::size_t j) const {
    std::vector<double> v(dim_);
    get(i, j, v.data());
    return v;
}

double TwoParamField::value(std::size_t i, std::size_t j, std::size_t c) const {
    if (data_) return (*data_)[offset(i, j) + c];
    return at(i, j)[c];
}

double* TwoParamField::entry(std::size_t i, std::size_t j) {
    if (!data_) throw std::logic_error("entry() requires an eager field");
    if (data_.use_count() > 1) data_ = std::make_shared<std::vector<double>>(*data_);
    return data_->data() + offset(i, j);
}

TwoParamField TwoParamField::materialize() const {
    if (data_) return *this;
    TwoParamField out(grid_, dim_);
    const std::size_t n = grid_.size();
    double* p = out.data_->data();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, p += dim_) eval_(i, j, p);
    return out;
}

TwoParamField TwoParamField::slice(std::size_t start, std::size_t len) const {
    TwoParamField base = *this;
    return from_function(grid_.block(len), dim_,
                         [base, start](std::size_t i, std::size_t j, double* out) {
                             base.get(start + i, start + j, out);
                         },
                         Mode::lazy);
}

TwoParamField TwoParamField::scaled(double a) const {
    TwoParamField base = *this;
    return from_function(grid_, dim_, [base, a](std::size_t i, std::size_t j, double* out) {
        base.get(i, j, out);
        for (std::size_t c = 0; c < base.dim(); ++c) out[c] *= a;
    }, data_ ? Mode::eager : Mode::lazy);
}

namespace {

TwoParamField combine(const TwoParamField& a, const TwoParamField& b, double sign) {
    if (!(a.grid() == b.grid()) || a.dim() != b.dim()) throw std::invalid_argument("field grid or dimension mismatch");
    const bool eager = !a.is_lazy() && !b.is_lazy();
    return TwoParamField::from_function(
        a.grid(), a.dim(),
        [a, b, sign](std::size_t i, std::size_t j, double* out) {
            thread_local std::vector<double> tmp;
            tmp.resize(b.dim());
            a.get(i, j, out);
            b.get(i, j, tmp.data());
            for (std::size_t c = 0; c < a.dim(); ++c) out[c] += sign * tmp[c];
        },
        eager ? TwoParamField::Mode::eager : TwoParamField::Mode::lazy);
}

}  // namespace

TwoParamField TwoParamField::operator-(const TwoParamField& o) const { return combine(*this, o, -1.0); }
TwoParamField TwoParamField::operator+(const TwoParamField& o) const { return combine(*this, o, 1.0); }

TwoParamField delta(const GridPath& path, TwoParamField::Mode mode) {
    auto values = std::make_shared<const std::vector<double>>(path.values());
    const std::size_t m = path.dim();
    return TwoParamField::from_function(path.grid(), m, [values, m](std::size_t i, std::size_t j, double* out) {
        const double* a = values->data() + i * m;
        const double* b = values->data() + j * m;
        for (std::size_t c = 0; c < m; ++c) out[c] = b[c] - a[c];
    }, mode);
}

void delta2(const TwoParamField& field, std::size_t i, std::size_t k, std::size_t j, double* out, double* scratch) {
    if (!(i <= k && k <= j)) throw std::invalid_argument("delta2 requires i <= k <= j");
    const std::size_t m = field.dim();
    field.get(i, j, out);
    field.get(i, k, scratch);
    for (std::size_t c = 0; c < m; ++c) out[c] -= scratch[c];
    field.get(k, j, scratch);
    for (std::size_t c = 0; c < m; ++c) out[c] -= scratch[c];
}

std::vector<double> delta2(const TwoParamField& field, std::size_t i, std::size_t k, std::size_t j) {
    std::vector<double> out(field.dim()), scratch(field.dim());
    delta2(field, i, k, j, out.data(), scratch.data());
    return out;
}

}  // namespace besov_rough
