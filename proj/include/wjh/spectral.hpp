#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wjh/jacobi.hpp"
#include "wjh/mesh.hpp"

namespace wjh {

// All min(m,n) singular values, descending. Backed by the platform dense SVD.
std::vector<double> singular_values(const Eigen::MatrixXd& a);

// q = #{ sigma_j > eps } / n.
double threshold_fraction(std::span<const double> svals, double eps, int n);

struct ScalingSpec {
  enum class Kind {
    none,
    divide_n_pow,             // A / N^gamma
    divide_logn_pow,          // A / (log N)^gamma, N >= 2
    premultiply_sqrt_dh_n_pow,  // N^gamma * D_h^{1/2} A (needs a mesh)
  };
  Kind kind = Kind::none;
  double gamma = 0.0;
};

Eigen::MatrixXd apply_scaling(const Eigen::MatrixXd& a, const ScalingSpec& spec,
                              const Mesh* mesh, int n);

// Sorted samples of |symbol| on the tensor grid of cell midpoints
// y_k = (k-1/2)/m over [0,1], theta_l = -pi + (2l-1) pi/m over [-pi,pi].
struct SymbolSamples {
  std::vector<double> values;  // nonincreasing, length grid_m^2
  int grid_m = 0;
  double trim_lo = 0.05;
  double trim_hi = 0.95;
};

// |kappa(y,theta)| = (2/y) |delta + sigma cos theta|, the symbol of N T^(J).
SymbolSamples sample_symbol_tj(const JacobiParams& params, int grid_m,
                               double trim_lo = 0.05, double trim_hi = 0.95);

// |1 - e^{i theta}| / (2 g'(y)), the symbol of Delta_N/N for nodes
// x_i = -1 + 2 g(i/N). Closed-form g' for named maps; central differences
// for a custom map.
SymbolSamples sample_symbol_delta(MeshMap map, int grid_m, double trim_lo = 0.05,
                                  double trim_hi = 0.95);
SymbolSamples sample_symbol_delta(const std::function<double(double)>& g,
                                  int grid_m, double trim_lo = 0.05,
                                  double trim_hi = 0.95);
// g' recovered from the mesh itself (g'((i-1/2)/N) ~ N h_i / 2).
SymbolSamples sample_symbol_delta(const Mesh& mesh, int grid_m,
                                  double trim_lo = 0.05, double trim_hi = 0.95);

struct RearrangementComparison {
  double max_rel_dev = 0.0;
  double mean_rel_dev = 0.0;
  int window_count = 0;  // singular values inside the trimmed quantile window
};

// Matches sorted singular values against the monotone rearrangement of the
// symbol by quantile interpolation, over the trimmed window [trim_lo, trim_hi].
// Requires at least 10 singular values.
RearrangementComparison compare_rearrangements(std::span<const double> svals,
                                               const SymbolSamples& symbol);

// Quantile resample of the symbol at u in [0,1] (descending convention).
double symbol_quantile(const SymbolSamples& symbol, double u);

struct ProbeRow {
  int n = 0;
  double eps = 0.0;
  double q = 0.0;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;  // keyed by (n, eps), n ascending
  // Per eps: q nonincreasing over the N list, allowing one adjacent
  // inversion of at most 5% relative.
  bool monotone_decay = true;
};

// Threshold-fraction decay table for a matrix family over an ascending N
// list (>= 3 entries). The family builds the unscaled matrix for a given N;
// mesh_factory is consulted only by the premultiply scaling.
ProbeReport zero_distribution_probe(
    const std::function<Eigen::MatrixXd(int)>& family, std::span<const int> n_list,
    const ScalingSpec& spec, std::span<const double> eps_list,
    const std::function<Mesh(int)>& mesh_factory = {});

}  // namespace wjh
