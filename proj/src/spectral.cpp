#include "wjh/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wjh/errors.hpp"

namespace wjh {

std::vector<double> singular_values(const Eigen::MatrixXd& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  if (m == 0 || n == 0) return {};
  if (!a.allFinite()) {
    throw std::invalid_argument("singular_values: matrix has non-finite entries");
  }
  Eigen::MatrixXd work = a;  // dgesdd overwrites its input
  std::vector<double> s(std::min(m, n));
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(),
                                         m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw DecompositionError("singular_values: dgesdd failed");
  return s;  // LAPACK returns them descending
}

double threshold_fraction(std::span<const double> svals, double eps, int n) {
  if (!(eps > 0.0)) throw std::invalid_argument("threshold_fraction: eps must be > 0");
  if (n < 1) throw std::invalid_argument("threshold_fraction: n must be >= 1");
  std::size_t count = 0;
  for (double s : svals) {
    if (s > eps) ++count;
  }
  return static_cast<double>(count) / n;
}

Eigen::MatrixXd apply_scaling(const Eigen::MatrixXd& a, const ScalingSpec& spec,
                              const Mesh* mesh, int n) {
  if (!std::isfinite(spec.gamma)) {
    throw std::invalid_argument("apply_scaling: gamma must be finite");
  }
  switch (spec.kind) {
    case ScalingSpec::Kind::none:
      return a;
    case ScalingSpec::Kind::divide_n_pow:
      if (n < 1) throw std::invalid_argument("apply_scaling: n must be >= 1");
      return a / std::pow(static_cast<double>(n), spec.gamma);
    case ScalingSpec::Kind::divide_logn_pow:
      if (n < 2) throw std::invalid_argument("apply_scaling: log scaling needs n >= 2");
      return a / std::pow(std::log(static_cast<double>(n)), spec.gamma);
    case ScalingSpec::Kind::premultiply_sqrt_dh_n_pow: {
      if (mesh == nullptr) {
        throw std::invalid_argument("apply_scaling: premultiply variant needs a mesh");
      }
      if (mesh->cells() != a.rows()) {
        throw std::invalid_argument("apply_scaling: mesh/matrix dimension mismatch");
      }
      Eigen::MatrixXd out = a;
      const double npow = std::pow(static_cast<double>(n), spec.gamma);
      for (int i = 0; i < a.rows(); ++i) {
        out.row(i) *= npow * std::sqrt(mesh->widths()[i]);
      }
      return out;
    }
  }
  throw std::invalid_argument("apply_scaling: unknown scaling kind");
}

namespace {

void check_symbol_args(int grid_m, double lo, double hi) {
  if (grid_m < 2) throw std::invalid_argument("symbol sampling: grid_m must be >= 2");
  if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
    throw std::invalid_argument("symbol sampling: need 0 <= lo < hi <= 1");
  }
}

// Midpoint tensor grid over [0,1] x [-pi,pi]; never touches y = 0, so the
// 1/y layer stays finite at every sample.
SymbolSamples sample_grid(const std::function<double(double, double)>& modulus,
                          int grid_m, double lo, double hi) {
  SymbolSamples out;
  out.grid_m = grid_m;
  out.trim_lo = lo;
  out.trim_hi = hi;
  out.values.resize(static_cast<std::size_t>(grid_m) * grid_m);
  std::size_t idx = 0;
  for (int k = 1; k <= grid_m; ++k) {
    const double y = (k - 0.5) / grid_m;
    for (int l = 1; l <= grid_m; ++l) {
      const double theta = -std::numbers::pi + (2.0 * l - 1.0) * std::numbers::pi / grid_m;
      out.values[idx++] = modulus(y, theta);
    }
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  return out;
}

}  // namespace

SymbolSamples sample_symbol_tj(const JacobiParams& params, int grid_m,
                               double trim_lo, double trim_hi) {
  check_symbol_args(grid_m, trim_lo, trim_hi);
  const double sigma = params.sigma();
  const double delta = params.delta();
  return sample_grid(
      [sigma, delta](double y, double theta) {
        return 2.0 / y * std::abs(delta + sigma * std::cos(theta));
      },
      grid_m, trim_lo, trim_hi);
}

namespace {

SymbolSamples sample_delta_from_gprime(const std::function<double(double)>& gprime,
                                       int grid_m, double lo, double hi) {
  return sample_grid(
      [&gprime](double y, double theta) {
        const double gp = gprime(y);
        if (!(gp > 0.0)) {
          throw std::domain_error("sample_symbol_delta: g' <= 0 at a sample point");
        }
        return std::abs(2.0 * std::sin(0.5 * theta)) / (2.0 * gp);
      },
      grid_m, lo, hi);
}

}  // namespace

SymbolSamples sample_symbol_delta(MeshMap map, int grid_m, double trim_lo,
                                  double trim_hi) {
  check_symbol_args(grid_m, trim_lo, trim_hi);
  return sample_delta_from_gprime([map](double y) { return mesh_map_derivative(map, y); },
                                  grid_m, trim_lo, trim_hi);
}

SymbolSamples sample_symbol_delta(const std::function<double(double)>& g,
                                  int grid_m, double trim_lo, double trim_hi) {
  check_symbol_args(grid_m, trim_lo, trim_hi);
  const double step = 1e-6;
  auto gprime = [&g, step](double y) {
    const double lo = std::max(0.0, y - step);
    const double hi = std::min(1.0, y + step);
    return (g(hi) - g(lo)) / (hi - lo);
  };
  return sample_delta_from_gprime(gprime, grid_m, trim_lo, trim_hi);
}

SymbolSamples sample_symbol_delta(const Mesh& mesh, int grid_m, double trim_lo,
                                  double trim_hi) {
  check_symbol_args(grid_m, trim_lo, trim_hi);
  const int n = mesh.cells();
  auto gprime = [&mesh, n](double y) {
    int i = std::clamp(static_cast<int>(y * n), 0, n - 1);
    return 0.5 * n * mesh.widths()[i];
  };
  return sample_delta_from_gprime(gprime, grid_m, trim_lo, trim_hi);
}

double symbol_quantile(const SymbolSamples& symbol, double u) {
  const std::size_t m = symbol.values.size();
  if (m == 0) throw std::invalid_argument("symbol_quantile: empty samples");
  // Descending values at midpoint quantiles (i - 1/2)/m, linear in between.
  const double pos = u * m - 0.5;
  if (pos <= 0.0) return symbol.values.front();
  if (pos >= static_cast<double>(m - 1)) return symbol.values.back();
  const std::size_t i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return symbol.values[i] + frac * (symbol.values[i + 1] - symbol.values[i]);
}

RearrangementComparison compare_rearrangements(std::span<const double> svals,
                                               const SymbolSamples& symbol) {
  const std::size_t d = svals.size();
  if (d < 10) throw std::invalid_argument("compare_rearrangements: needs >= 10 values");
  RearrangementComparison out;
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double u = (j + 0.5) / static_cast<double>(d);
    if (u < symbol.trim_lo || u > symbol.trim_hi) continue;
    const double ref = symbol_quantile(symbol, u);
    if (ref == 0.0) continue;  // symbol zero set has measure zero in-window
    const double dev = std::abs(svals[j] - ref) / std::abs(ref);
    out.max_rel_dev = std::max(out.max_rel_dev, dev);
    sum += dev;
    ++out.window_count;
  }
  if (out.window_count == 0) {
    throw std::invalid_argument("compare_rearrangements: empty trimmed window");
  }
  out.mean_rel_dev = sum / out.window_count;
  return out;
}

ProbeReport zero_distribution_probe(
    const std::function<Eigen::MatrixXd(int)>& family, std::span<const int> n_list,
    const ScalingSpec& spec, std::span<const double> eps_list,
    const std::function<Mesh(int)>& mesh_factory) {
  if (n_list.size() < 3) {
    throw std::invalid_argument("zero_distribution_probe: need >= 3 sizes");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("zero_distribution_probe: N list must be increasing");
    }
  }
  ProbeReport report;
  std::vector<std::vector<double>> q_per_eps(eps_list.size());
  for (int n : n_list) {
    Eigen::MatrixXd a = family(n);
    if (spec.kind == ScalingSpec::Kind::premultiply_sqrt_dh_n_pow) {
      if (!mesh_factory) {
        throw std::invalid_argument("zero_distribution_probe: premultiply needs a mesh factory");
      }
      const Mesh mesh = mesh_factory(n);
      a = apply_scaling(a, spec, &mesh, n);
    } else {
      a = apply_scaling(a, spec, nullptr, n);
    }
    const std::vector<double> svals = singular_values(a);
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      const double q = threshold_fraction(svals, eps_list[e], n);
      report.rows.push_back(ProbeRow{n, eps_list[e], q});
      q_per_eps[e].push_back(q);
    }
  }
  // One adjacent inversion of at most 5% relative absorbs SVD noise at small q.
  for (const auto& qs : q_per_eps) {
    int inversions = 0;
    for (std::size_t i = 1; i < qs.size(); ++i) {
      if (qs[i] > qs[i - 1]) {
        ++inversions;
        if (inversions > 1 || qs[i] > qs[i - 1] * 1.05) report.monotone_decay = false;
      }
    }
  }
  return report;
}

}  // namespace wjh
