#pragma once

#include <span>
#include <vector>

namespace wjh {

// Exponent pair (alpha, beta) of the weight (1-t)^alpha (1+t)^beta on [-1,1].
// Both exponents must stay above -1 (orthogonality regime); sigma and delta
// are derived, never set independently.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double sigma() const { return alpha_ + beta_; }
  double delta() const { return alpha_ - beta_; }

  // Parameter pair shifted by +1 in both exponents, (alpha+1, beta+1).
  JacobiParams shifted() const { return JacobiParams(alpha_ + 1.0, beta_ + 1.0); }

  bool positive() const { return alpha_ > 0.0 && beta_ > 0.0; }

 private:
  double alpha_;
  double beta_;
};

// Three-term recurrence coefficients: t P_j = a_j P_{j+1} + b_j P_j + c_j P_{j-1}.
struct RecurrenceCoeffs {
  double a;
  double b;
  double c;
};

// Coupling coefficients of the primitive decomposition,
// psi_j = r~_j + u_j I_{j+1} + d_j I_j + l_j I_{j-1}.
struct CouplingCoeffs {
  double u;
  double d;
  double l;
};

// w(t) = (1-t)^alpha (1+t)^beta. Throws std::domain_error for t outside
// [-1,1] or at an endpoint whose exponent is negative.
double weight(const JacobiParams& params, double t);

// Evaluates P_0,...,P_J at x by upward recurrence into out (size J+1).
void eval_jacobi(const JacobiParams& params, int max_degree, double x,
                 std::span<double> out);
std::vector<double> eval_jacobi(const JacobiParams& params, int max_degree, double x);

// Single degree-j value; evaluates the whole recurrence chain.
double eval_jacobi_one(const JacobiParams& params, int degree, double x);

// K_j = int P_j^2 w, by the closed Gamma-ratio formula in log domain.
double jacobi_norm(const JacobiParams& params, int degree);

// P_j(x) / sqrt(K_j).
double eval_orthonormal(const JacobiParams& params, int degree, double x);

RecurrenceCoeffs recurrence_coeffs(const JacobiParams& params, int degree);

// Requires alpha, beta > 0.
CouplingCoeffs coupling_coeffs(const JacobiParams& params, int degree);

// d/dx P_j(x) = (j+alpha+beta+1)/2 * P_{j-1}^{(alpha+1,beta+1)}(x); 0 for j=0.
double eval_jacobi_derivative(const JacobiParams& params, int degree, double x);

// Precomputed recurrence table for repeated all-degree evaluations at many
// points (matrix assembly kernels). eval() is the hot path.
class JacobiRecurrence {
 public:
  JacobiRecurrence(const JacobiParams& params, int max_degree);

  int max_degree() const { return max_degree_; }
  const JacobiParams& params() const { return params_; }

  // Writes P_0..P_max_degree at x into out (size max_degree+1).
  void eval(double x, std::span<double> out) const;

 private:
  JacobiParams params_;
  int max_degree_;
  double p1_slope_;
  double p1_offset_;
  std::vector<double> inv_a_;  // 1/a_j, j >= 1
  std::vector<double> b_;
  std::vector<double> c_;
};

}  // namespace wjh
