#include "wjh/jacobi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wjh {

namespace {

constexpr double kDomainEps = 1e-14;

void check_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("jacobi: degree must be >= 0");
}

}  // namespace

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw std::invalid_argument("JacobiParams: alpha and beta must be finite and > -1");
  }
}

double weight(const JacobiParams& params, double t) {
  if (!(t >= -1.0 - kDomainEps) || !(t <= 1.0 + kDomainEps)) {
    throw std::domain_error("weight: t outside [-1,1]");
  }
  const double om = 1.0 - t;
  const double op = 1.0 + t;
  if (om <= 0.0 && params.alpha() < 0.0) {
    throw std::domain_error("weight: singular endpoint t=1 with alpha < 0");
  }
  if (op <= 0.0 && params.beta() < 0.0) {
    throw std::domain_error("weight: singular endpoint t=-1 with beta < 0");
  }
  return std::pow(std::max(om, 0.0), params.alpha()) *
         std::pow(std::max(op, 0.0), params.beta());
}

RecurrenceCoeffs recurrence_coeffs(const JacobiParams& params, int degree) {
  if (degree < 1) throw std::invalid_argument("recurrence_coeffs: degree must be >= 1");
  const double j = degree;
  const double s = params.sigma();
  RecurrenceCoeffs r;
  r.a = 2.0 * (j + 1.0) * (j + s + 1.0) / ((2.0 * j + s + 1.0) * (2.0 * j + s + 2.0));
  r.b = (params.beta() * params.beta() - params.alpha() * params.alpha()) /
        ((2.0 * j + s) * (2.0 * j + s + 2.0));
  r.c = 2.0 * (j + params.alpha()) * (j + params.beta()) /
        ((2.0 * j + s) * (2.0 * j + s + 1.0));
  return r;
}

CouplingCoeffs coupling_coeffs(const JacobiParams& params, int degree) {
  if (degree < 1) throw std::invalid_argument("coupling_coeffs: degree must be >= 1");
  if (!params.positive()) {
    throw std::invalid_argument("coupling_coeffs: requires alpha, beta > 0");
  }
  const RecurrenceCoeffs r = recurrence_coeffs(params, degree);
  const double s = params.sigma();
  const double scale = 2.0 / (degree + s + 1.0);
  CouplingCoeffs c;
  c.u = scale * s * r.a;
  c.d = scale * (params.delta() + s * r.b);
  c.l = scale * s * r.c;
  return c;
}

JacobiRecurrence::JacobiRecurrence(const JacobiParams& params, int max_degree)
    : params_(params), max_degree_(max_degree) {
  check_degree(max_degree);
  p1_slope_ = 0.5 * (params.sigma() + 2.0);
  p1_offset_ = 0.5 * params.delta();
  const int count = std::max(0, max_degree - 1);
  inv_a_.reserve(count);
  b_.reserve(count);
  c_.reserve(count);
  for (int j = 1; j < max_degree; ++j) {
    const RecurrenceCoeffs r = recurrence_coeffs(params, j);
    inv_a_.push_back(1.0 / r.a);
    b_.push_back(r.b);
    c_.push_back(r.c);
  }
}

void JacobiRecurrence::eval(double x, std::span<double> out) const {
  if (static_cast<int>(out.size()) != max_degree_ + 1) {
    throw std::invalid_argument("JacobiRecurrence::eval: output size mismatch");
  }
  out[0] = 1.0;
  if (max_degree_ == 0) return;
  out[1] = p1_slope_ * x + p1_offset_;
  for (int j = 1; j < max_degree_; ++j) {
    out[j + 1] = ((x - b_[j - 1]) * out[j] - c_[j - 1] * out[j - 1]) * inv_a_[j - 1];
  }
}

void eval_jacobi(const JacobiParams& params, int max_degree, double x,
                 std::span<double> out) {
  JacobiRecurrence(params, max_degree).eval(x, out);
}

std::vector<double> eval_jacobi(const JacobiParams& params, int max_degree,
                                double x) {
  check_degree(max_degree);
  std::vector<double> out(max_degree + 1);
  eval_jacobi(params, max_degree, x, out);
  return out;
}

double eval_jacobi_one(const JacobiParams& params, int degree, double x) {
  return eval_jacobi(params, degree, x).back();
}

double jacobi_norm(const JacobiParams& params, int degree) {
  check_degree(degree);
  const double j = degree;
  const double a = params.alpha();
  const double b = params.beta();
  const double s = params.sigma();
  // All Gamma arguments are positive for alpha, beta > -1; evaluate in log
  // domain so degrees up to 1e5 stay finite.
  const double log_ratio = std::lgamma(j + a + 1.0) + std::lgamma(j + b + 1.0) -
                           std::lgamma(j + 1.0) - std::lgamma(j + s + 1.0);
  return std::exp((s + 1.0) * std::log(2.0) - std::log(2.0 * j + s + 1.0) +
                  log_ratio);
}

double eval_orthonormal(const JacobiParams& params, int degree, double x) {
  return eval_jacobi_one(params, degree, x) / std::sqrt(jacobi_norm(params, degree));
}

double eval_jacobi_derivative(const JacobiParams& params, int degree, double x) {
  check_degree(degree);
  if (degree == 0) return 0.0;
  return 0.5 * (degree + params.sigma() + 1.0) *
         eval_jacobi_one(params.shifted(), degree - 1, x);
}

}  // namespace wjh
