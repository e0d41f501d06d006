#pragma once

#include <stdexcept>
#include <string>

namespace besov_rough {

// Invalid input data or files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters outside the admissible regime of an operation.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solver did not converge.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace besov_rough
