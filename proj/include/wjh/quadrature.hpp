#pragma once

#include <functional>
#include <vector>

#include "wjh/jacobi.hpp"

namespace wjh {

// Gauss-Legendre rule on [-1,1]: nodes strictly increasing in (-1,1),
// symmetric about 0, weights summing to 2.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// n-point rule, exact for polynomials of degree <= 2n-1. Rules are cached by
// order behind an internal lock; the returned reference stays valid for the
// program lifetime. 1 <= n <= 10000.
const QuadratureRule& gauss_legendre(int n);

// Gauss-Legendre approximation of int_a^b f on one panel (affine map of the
// reference rule). Requires a < b.
double integrate_cell(const std::function<double(double)>& f, double a, double b,
                      int order);

// int_a^b f(t) w_{alpha,beta}(t) dt with [a,b] inside [-1,1]. Panels are
// graded geometrically (ratio 1/4) toward any touched endpoint whose exponent
// is negative or non-integer; panels are refined by bisection until the
// summed order-32 vs order-48 discrepancies fall below tol. Throws
// QuadratureError when the tolerance cannot be met within the panel budget.
// The final summed discrepancy is written to err_estimate when given;
// halving tol never increases it.
double integrate_weighted(const std::function<double(double)>& f,
                          const JacobiParams& weight_params, double a, double b,
                          double tol = 1e-11, double* err_estimate = nullptr);

namespace detail {

struct Panel {
  // A power_* panel touches +-1 with a negative or non-integer exponent and
  // is integrated under the substitution v = delta u^{1/(1+e)}.
  enum class Kind { plain, power_lo, power_hi };
  double lo = 0.0;
  double hi = 0.0;
  int order = 0;
  Kind kind = Kind::plain;
  double exponent = 0.0;
};

// Panel decomposition of [a,b] for integrands (polynomial of degree
// <= max_degree) * w_{alpha,beta}. Orders follow the arc-length rule
// n ~ max_degree * dphi / 2 (dphi in acos coordinates), with an exactness
// shortcut when the weight itself is a polynomial.
std::vector<Panel> weighted_panel_plan(double a, double b,
                                       const JacobiParams& weight_params,
                                       int max_degree);

// Effective abscissae and combined weights w_q * w_{alpha,beta}(t_q) of a
// panel at the given order (singular factors absorbed analytically on power
// panels), so that int_panel f w ~ sum ws[q] f(ts[q]). Overwrites ts and ws.
void panel_weighted_nodes(const Panel& panel, const JacobiParams& weight_params,
                          int order, std::vector<double>& ts,
                          std::vector<double>& ws);

}  // namespace detail

}  // namespace wjh
