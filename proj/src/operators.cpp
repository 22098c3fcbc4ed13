#include "wjh/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "wjh/quadrature.hpp"

namespace wjh {

namespace detail {

std::vector<double> basis_cell_integrals(const JacobiRecurrence& basis,
                                         const JacobiParams& weight_params,
                                         double a, double b, int moment) {
  const int count = basis.max_degree() + 1;
  std::vector<double> out(count, 0.0);
  if (b - a < 1e-15) return out;
  const auto panels = weighted_panel_plan(a, b, weight_params, basis.max_degree());
  std::vector<double> ts, ws, p(count);
  for (const auto& panel : panels) {
    panel_weighted_nodes(panel, weight_params, panel.order, ts, ws);
    for (std::size_t q = 0; q < ts.size(); ++q) {
      double w = ws[q];
      if (moment == 1) w *= ts[q];
      basis.eval(ts[q], p);
      for (int j = 0; j < count; ++j) out[j] += w * p[j];
    }
  }
  return out;
}

}  // namespace detail

JacobiParams basis_params(const JacobiParams& params, HistoBasis basis) {
  return basis == HistoBasis::shifted ? params.shifted() : params;
}

Eigen::MatrixXd build_h(const JacobiParams& params, const Mesh& mesh,
                        HistoBasis basis) {
  const int n = mesh.cells();
  const JacobiRecurrence rec(basis_params(params, basis), n - 1);
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    const auto ints = detail::basis_cell_integrals(rec, params, mesh.nodes()[i],
                                                   mesh.nodes()[i + 1]);
    const double inv_h = 1.0 / mesh.widths()[i];
    for (int j = 0; j < n; ++j) h(i, j) = inv_h * ints[j];
  }
  return h;
}

Eigen::MatrixXd build_delta(const Mesh& mesh) {
  const int n = mesh.cells();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n + 1);
  for (int i = 0; i < n; ++i) {
    const double inv_h = 1.0 / mesh.widths()[i];
    d(i, i) = -inv_h;
    d(i, i + 1) = inv_h;
  }
  return d;
}

std::vector<double> primitive_psi(const JacobiParams& params, int j,
                                  const Mesh& mesh) {
  if (j < 1) throw std::invalid_argument("primitive_psi: requires j >= 1");
  const int n = mesh.cells();
  const JacobiRecurrence rec(params.shifted(), j - 1);
  std::vector<double> psi(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto ints = detail::basis_cell_integrals(rec, params, mesh.nodes()[i],
                                                   mesh.nodes()[i + 1]);
    psi[i + 1] = psi[i] + ints[j - 1];
  }
  return psi;
}

Eigen::MatrixXd build_psi(const JacobiParams& params, const Mesh& mesh) {
  const int n = mesh.cells();
  const JacobiRecurrence rec(params.shifted(), n - 1);
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(n + 1, n);
  for (int i = 0; i < n; ++i) {
    const auto ints = detail::basis_cell_integrals(rec, params, mesh.nodes()[i],
                                                   mesh.nodes()[i + 1]);
    for (int j = 0; j < n; ++j) psi(i + 1, j) = psi(i, j) + ints[j];
  }
  return psi;
}

namespace {

JacobiParams lowered_params(const JacobiParams& params) {
  if (!params.positive()) {
    throw std::invalid_argument(
        "primitive weight w_{alpha-1,beta-1} is integrable only for alpha, beta > 0");
  }
  return JacobiParams(params.alpha() - 1.0, params.beta() - 1.0);
}

double primitive_moment(const JacobiParams& params, int j, double x, int moment) {
  if (j < 0) throw std::invalid_argument("primitive: requires j >= 0");
  if (x < -1.0 - 1e-13 || x > 1.0 + 1e-13) {
    throw std::domain_error("primitive: x outside [-1,1]");
  }
  const JacobiParams lowered = lowered_params(params);
  x = std::clamp(x, -1.0, 1.0);
  if (x + 1.0 < 1e-15) return 0.0;
  const JacobiRecurrence rec(params, j);
  return detail::basis_cell_integrals(rec, lowered, -1.0, x, moment)[j];
}

}  // namespace

double primitive_I(const JacobiParams& params, int j, double x) {
  return primitive_moment(params, j, x, 0);
}

double primitive_J(const JacobiParams& params, int j, double x) {
  return primitive_moment(params, j, x, 1);
}

Eigen::MatrixXd build_r(const JacobiParams& params, const Mesh& mesh) {
  if (!params.positive()) {
    throw std::invalid_argument("build_r: requires alpha, beta > 0");
  }
  const int n = mesh.cells();
  const JacobiRecurrence rec(params, n);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n + 1, n);
  std::vector<double> p(n + 1);
  // Boundary rows vanish exactly: w(+-1) = 0 for positive exponents.
  for (int k = 1; k < n; ++k) {
    const double x = mesh.nodes()[k];
    const double w = weight(params, x);
    rec.eval(x, p);
    for (int j = 1; j <= n; ++j) {
      r(k, j - 1) = 2.0 / (j + params.sigma() + 1.0) * p[j] * w;
    }
  }
  return r;
}

Eigen::MatrixXd build_iext(const JacobiParams& params, const Mesh& mesh) {
  const JacobiParams lowered = lowered_params(params);
  const int n = mesh.cells();
  const JacobiRecurrence rec(params, n + 1);
  Eigen::MatrixXd iext = Eigen::MatrixXd::Zero(n + 1, n + 2);
  for (int k = 0; k < n; ++k) {
    const auto ints = detail::basis_cell_integrals(rec, lowered, mesh.nodes()[k],
                                                   mesh.nodes()[k + 1]);
    for (int r = 0; r <= n + 1; ++r) iext(k + 1, r) = iext(k, r) + ints[r];
  }
  return iext;
}

Eigen::MatrixXd build_tj(const JacobiParams& params, int n) {
  if (n < 1) throw std::invalid_argument("build_tj: requires N >= 1");
  if (!params.positive()) {
    throw std::invalid_argument("build_tj: requires alpha, beta > 0");
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n + 2, n);
  for (int j = 1; j <= n; ++j) {
    const CouplingCoeffs c = coupling_coeffs(params, j);
    t(j - 1, j - 1) = c.l;
    t(j, j - 1) = c.d;
    t(j + 1, j - 1) = c.u;
  }
  return t;
}

Eigen::MatrixXd build_gram(const JacobiParams& params, int n) {
  if (n < 1) throw std::invalid_argument("build_gram: requires N >= 1");
  if (!(params.alpha() > -0.5) || !(params.beta() > -0.5)) {
    throw std::invalid_argument("build_gram: requires alpha, beta > -1/2");
  }
  const JacobiParams squared(2.0 * params.alpha(), 2.0 * params.beta());
  const int max_degree = n - 1;
  // The integrand P_l P_k has degree up to 2(n-1); the plan's order rule is
  // driven by that product degree.
  const auto panels = detail::weighted_panel_plan(-1.0, 1.0, squared,
                                                  2 * max_degree);
  const JacobiRecurrence rec(params, max_degree);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> ts, ws, p(n);
  constexpr int kBlock = 512;
  Eigen::MatrixXd bt(n, kBlock);
  int filled = 0;
  auto flush = [&]() {
    if (filled == 0) return;
    gram.selfadjointView<Eigen::Lower>().rankUpdate(bt.leftCols(filled), 1.0);
    filled = 0;
  };
  for (const auto& panel : panels) {
    detail::panel_weighted_nodes(panel, squared, panel.order, ts, ws);
    for (std::size_t q = 0; q < ts.size(); ++q) {
      if (ws[q] <= 0.0) continue;
      rec.eval(ts[q], p);
      const double s = std::sqrt(ws[q]);
      for (int j = 0; j < n; ++j) bt(j, filled) = s * p[j];
      if (++filled == kBlock) flush();
    }
  }
  flush();
  gram.triangularView<Eigen::StrictlyUpper>() =
      gram.triangularView<Eigen::StrictlyLower>().transpose();
  return gram;
}

std::vector<double> cell_averages(const std::function<double(double)>& f,
                                  const JacobiParams& params, const Mesh& mesh) {
  const int n = mesh.cells();
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) {
    b[i] = integrate_weighted(f, params, mesh.nodes()[i], mesh.nodes()[i + 1]) /
           mesh.widths()[i];
  }
  return b;
}

FactorizationReport verify_factorization(const JacobiParams& params,
                                         const Mesh& mesh) {
  if (!params.positive()) {
    throw std::invalid_argument("verify_factorization: requires alpha, beta > 0");
  }
  const Eigen::MatrixXd h = build_h(params, mesh, HistoBasis::shifted);
  const Eigen::MatrixXd delta = build_delta(mesh);
  const Eigen::MatrixXd psi = build_psi(params, mesh);
  const Eigen::MatrixXd r = build_r(params, mesh);
  const Eigen::MatrixXd iext = build_iext(params, mesh);
  const Eigen::MatrixXd tj = build_tj(params, mesh.cells());
  FactorizationReport report;
  report.r1 = (h - delta * psi).norm() / h.norm();
  report.r2 = (psi - r - iext * tj).norm() / psi.norm();
  return report;
}

LemmaReport lemma_identities(const JacobiParams& params, int jmax, int npoints) {
  if (jmax < 1 || npoints < 2) {
    throw std::invalid_argument("lemma_identities: requires jmax >= 1, npoints >= 2");
  }
  const JacobiParams lowered = lowered_params(params);
  const JacobiRecurrence shifted_rec(params.shifted(), jmax - 1);
  const JacobiRecurrence standard_rec(params, jmax + 1);
  const double sigma = params.sigma();
  LemmaReport report;
  std::vector<double> p(jmax + 2);
  for (int s = 0; s < npoints; ++s) {
    const double x = -1.0 + 2.0 * s / (npoints - 1.0);
    if (x + 1.0 < 1e-15) continue;  // empty integrals, identities trivial
    const auto psi =
        detail::basis_cell_integrals(shifted_rec, params, -1.0, x);  // psi_{j}, j-1 indexed
    const auto iv = detail::basis_cell_integrals(standard_rec, lowered, -1.0, x);
    const auto jv = detail::basis_cell_integrals(standard_rec, lowered, -1.0, x, 1);
    const double w = weight(params, x);
    standard_rec.eval(x, p);
    for (int j = 1; j <= jmax; ++j) {
      const double rhs24 = 2.0 / (j + sigma + 1.0) *
                           (p[j] * w + params.delta() * iv[j] + sigma * jv[j]);
      report.lemma24_max = std::max(report.lemma24_max, std::abs(psi[j - 1] - rhs24));
      const RecurrenceCoeffs rc = recurrence_coeffs(params, j);
      const double rhs25 = rc.a * iv[j + 1] + rc.b * iv[j] + rc.c * iv[j - 1];
      report.lemma25_max = std::max(report.lemma25_max, std::abs(jv[j] - rhs25));
    }
  }
  return report;
}

}  // namespace wjh
