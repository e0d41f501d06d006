#include "besov_rough/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "besov_rough/random.hpp"

namespace besov_rough {

GridPath heaviside(const UniformGrid& grid, double jump) {
    return GridPath::sample_scalar(grid, [jump](double t) { return t >= jump ? 1.0 : 0.0; });
}

GridPath sawtooth(const UniformGrid& grid, double alpha, int n) {
    const double amp = std::exp2(-alpha * n);
    const double freq = std::exp2(n);
    return GridPath::sample_scalar(grid, [=](double t) {
        const double u = freq * t - std::floor(freq * t);
        return amp * (u <= 0.5 ? u : 1.0 - u);
    });
}

GridPath loglog_signal(const UniformGrid& grid) {
    return GridPath::sample_scalar(grid, [](double t) {
        if (t <= 0.0 || t >= 0.25) return 0.0;
        // Smooth cutoff: 1 on (0, 1/8], decaying to 0 at 1/4.
        double chi = 1.0;
        if (t > 0.125) {
            const double u = (t - 0.125) / 0.125;
            chi = 0.5 * (1.0 + std::cos(std::numbers::pi * u));
        }
        return chi * std::log(std::fabs(std::log(t)));
    });
}

GridPath random_piecewise_linear(const UniformGrid& grid, std::size_t dim, std::size_t knots, std::uint64_t seed) {
    Rng rng(seed);
    const double T = grid.horizon();
    std::vector<double> times{0.0, T};
    for (std::size_t k = 0; k < knots; ++k) times.push_back(T * rng.uniform());
    std::sort(times.begin(), times.end());
    std::vector<double> vals(times.size() * dim);
    for (double& v : vals) v = rng.normal();

    return GridPath::sample(grid, dim, [&](double t, std::span<double> out) {
        auto it = std::upper_bound(times.begin(), times.end(), t);
        std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - times.begin()), times.size() - 1);
        std::size_t lo = hi == 0 ? 0 : hi - 1;
        const double w = times[hi] > times[lo] ? (t - times[lo]) / (times[hi] - times[lo]) : 0.0;
        for (std::size_t c = 0; c < dim; ++c)
            out[c] = (1.0 - w) * vals[lo * dim + c] + w * vals[hi * dim + c];
    });
}

}  // namespace besov_rough
