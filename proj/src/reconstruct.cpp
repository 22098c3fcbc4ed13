#include "wjh/reconstruct.hpp"

#include <cmath>
#include <stdexcept>

#include "wjh/errors.hpp"
#include "wjh/quadrature.hpp"

namespace wjh {

namespace {

constexpr double kRcondFloor = 1e-14;  // refusal at condition estimate 1e14

}  // namespace

SolveResult solve_histopolation(const JacobiParams& params, const Mesh& mesh,
                                HistoBasis basis, std::span<const double> b) {
  const int n = mesh.cells();
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("solve_histopolation: b must have N entries");
  }
  const Eigen::MatrixXd h = build_h(params, mesh, basis);
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), n);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(h);
  const double rcond = lu.rcond();
  if (!(rcond > kRcondFloor)) {
    throw SingularMatrixError(
        "solve_histopolation: condition estimate beyond 1e14; solve refused");
  }
  const Eigen::VectorXd c = lu.solve(rhs);
  const double bnorm = rhs.norm();
  SolveResult result{Histopolant{std::vector<double>(c.data(), c.data() + n),
                                 basis, params},
                     0.0, rcond};
  result.residual = bnorm > 0.0 ? (h * c - rhs).norm() / bnorm : (h * c).norm();
  return result;
}

double evaluate_histopolant(const Histopolant& p, double x) {
  if (x < -1.0 - 1e-13 || x > 1.0 + 1e-13) {
    throw std::domain_error("evaluate_histopolant: x outside [-1,1]");
  }
  const int n = static_cast<int>(p.coeffs.size());
  if (n == 0) return 0.0;
  std::vector<double> vals(n);
  eval_jacobi(basis_params(p.params, p.basis), n - 1, std::clamp(x, -1.0, 1.0), vals);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += p.coeffs[j] * vals[j];
  return sum;
}

double verify_averages(const Histopolant& p, const Mesh& mesh,
                       std::span<const double> b) {
  const int n = mesh.cells();
  if (static_cast<int>(b.size()) != n || static_cast<int>(p.coeffs.size()) != n) {
    throw std::invalid_argument("verify_averages: dimension mismatch");
  }
  auto f = [&p](double t) { return evaluate_histopolant(p, t); };
  double max_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    const double avg =
        integrate_weighted(f, p.params, mesh.nodes()[i], mesh.nodes()[i + 1]) /
        mesh.widths()[i];
    max_residual = std::max(max_residual, std::abs(avg - b[i]));
  }
  return max_residual;
}

}  // namespace wjh
