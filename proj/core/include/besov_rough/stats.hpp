#pragma once

#include <cstddef>
#include <vector>

namespace besov_rough {

struct LinearFit {
    double slope;
    double intercept;
    double r2;
};

/// Least-squares line through (x, y).
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
/// Unbiased sample variance.
double variance(const std::vector<double>& v);
double standard_error(const std::vector<double>& v);
/// Linear-interpolated empirical quantile, u in [0, 1].
double quantile(std::vector<double> v, double u);
double median(std::vector<double> v);

}  // namespace besov_rough
