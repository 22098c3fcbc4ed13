#include "wjh/stability.hpp"

#include <lapacke.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "wjh/errors.hpp"
#include "wjh/operators.hpp"
#include "wjh/spectral.hpp"

namespace wjh {

double h_norm(const Mesh& mesh, std::span<const double> v) {
  if (static_cast<int>(v.size()) != mesh.cells()) {
    throw std::invalid_argument("h_norm: vector length must match cell count");
  }
  double sum = 0.0;
  for (int i = 0; i < mesh.cells(); ++i) sum += mesh.widths()[i] * v[i] * v[i];
  return std::sqrt(sum);
}

double h_norm(const Mesh& mesh, const Eigen::VectorXd& v) {
  return h_norm(mesh, std::span<const double>(v.data(), v.size()));
}

double op_norm_2_to_h(const Eigen::MatrixXd& h, const Mesh& mesh) {
  if (h.rows() != mesh.cells()) {
    throw std::invalid_argument("op_norm_2_to_h: mesh/matrix dimension mismatch");
  }
  Eigen::MatrixXd scaled = h;
  for (int i = 0; i < h.rows(); ++i) {
    scaled.row(i) *= std::sqrt(mesh.widths()[i]);
  }
  const std::vector<double> s = singular_values(scaled);
  return s.empty() ? 0.0 : s.front();
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("symmetric_eigenvalues: matrix must be square");
  }
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd work = a;
  std::vector<double> ev(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, ev.data());
  if (info != 0) throw DecompositionError("symmetric_eigenvalues: dsyevd failed");
  return ev;  // ascending
}

double lambda_max_gram(const JacobiParams& params, int n) {
  const Eigen::MatrixXd gram = build_gram(params, n);
  return symmetric_eigenvalues(gram).back();
}

std::vector<double> diag_gram_decay(const JacobiParams& params, int jmax) {
  if (jmax < 0) throw std::invalid_argument("diag_gram_decay: jmax must be >= 0");
  const Eigen::MatrixXd gram = build_gram(params, jmax + 1);
  std::vector<double> d(jmax + 1);
  for (int j = 0; j <= jmax; ++j) d[j] = gram(j, j);
  return d;
}

StabilityReport verify_stability(const JacobiParams& params, const Mesh& mesh,
                                 int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_stability: trials must be >= 1");
  const int n = mesh.cells();
  const Eigen::MatrixXd h = build_h(params, mesh, HistoBasis::standard);
  const Eigen::MatrixXd gram = build_gram(params, n);

  StabilityReport report;
  report.n = n;
  report.lambda_max_gram = symmetric_eigenvalues(gram).back();
  report.log_bound_ratio = report.lambda_max_gram / (1.0 + std::log(n));
  report.op_norm_2_to_h = op_norm_2_to_h(h, mesh);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double min_margin = std::numeric_limits<double>::infinity();
  Eigen::VectorXd c(n);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) c(i) = gauss(rng);
    const double norm = c.norm();
    if (norm == 0.0) continue;
    c /= norm;
    const double quad = c.dot(gram * c);
    const Eigen::VectorXd hc = h * c;
    const double hn = h_norm(mesh, hc);
    min_margin = std::min(min_margin, quad - hn * hn);
  }
  report.inequality_margin = min_margin;
  return report;
}

double min_eig_stability_gap(const JacobiParams& params, const Mesh& mesh) {
  const int n = mesh.cells();
  const Eigen::MatrixXd h = build_h(params, mesh, HistoBasis::standard);
  const Eigen::MatrixXd gram = build_gram(params, n);
  Eigen::MatrixXd weighted = h;
  for (int i = 0; i < n; ++i) weighted.row(i) *= mesh.widths()[i];
  const Eigen::MatrixXd gap = gram - h.transpose() * weighted;
  return symmetric_eigenvalues(gap).front();
}

}  // namespace wjh
