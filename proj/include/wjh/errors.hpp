#pragma once

#include <stdexcept>

namespace wjh {

// Weighted quadrature failed (non-integrable endpoint, tolerance not reached).
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear solve refused or failed (condition estimate beyond threshold).
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// LAPACK decomposition did not converge.
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wjh
