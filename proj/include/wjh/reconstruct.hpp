#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wjh/jacobi.hpp"
#include "wjh/mesh.hpp"
#include "wjh/operators.hpp"

namespace wjh {

// Coefficients of p = sum c_j phi_{j-1} in the chosen basis.
struct Histopolant {
  std::vector<double> coeffs;
  HistoBasis basis = HistoBasis::shifted;
  JacobiParams params;
};

struct SolveResult {
  Histopolant p;
  double residual = 0.0;  // ||Hc - b|| / ||b||
  double rcond = 0.0;     // reciprocal 1-norm condition estimate of H
};

// Solves H_N c = b by dense LU with partial pivoting. Refuses (throws
// SingularMatrixError) when the condition estimate exceeds 1e14. No
// regularization: ill-conditioning is reported, not masked.
SolveResult solve_histopolation(const JacobiParams& params, const Mesh& mesh,
                                HistoBasis basis, std::span<const double> b);

// sum c_j phi_{j-1}(x), single recurrence pass over all degrees.
double evaluate_histopolant(const Histopolant& p, double x);

// max_i |(1/h_i) int_{s_i} p w - b_i|, with the cell integrals re-computed
// by quadrature on the evaluated polynomial (independent of the solve path).
double verify_averages(const Histopolant& p, const Mesh& mesh,
                       std::span<const double> b);

}  // namespace wjh
