#pragma once

#include <cstddef>
#include <cstdint>

#include "besov_rough/grid.hpp"

namespace besov_rough {

/// 1_{t >= jump}.
GridPath heaviside(const UniformGrid& grid, double jump = 0.5);

/// f_t = 2^{-alpha n} chi(2^n t) with chi the 1-periodic tent (t on [0, 1/2], 1 - t on [1/2, 1]).
GridPath sawtooth(const UniformGrid& grid, double alpha, int n);

/// chi_t log|log t| with chi a cutoff equal to 1 near 0 and 0 beyond 1/4; f_0 = 0 by convention.
GridPath loglog_signal(const UniformGrid& grid);

/// Piecewise-linear interpolation of N(0, 1) values at `knots` uniform random times plus both endpoints.
/// The function does not depend on the grid level, so refinements sample the same path.
GridPath random_piecewise_linear(const UniformGrid& grid, std::size_t dim, std::size_t knots, std::uint64_t seed);

}  // namespace besov_rough
