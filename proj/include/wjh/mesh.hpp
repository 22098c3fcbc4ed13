#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace wjh {

// Named node-generating maps g:[0,1]->[0,1], nodes x_i = -1 + 2 g(i/N).
// The backward-difference symbol under this convention is
// (1 - e^{i theta}) / (2 g'(y)); a map g^ defined on [-1,1] as in the
// alternative convention relates by g'(y) = 2 g^'(-1+2y).
enum class MeshMap {
  uniform,  // g(y) = y
  exp_map,  // g(y) = (e^y - 1)/(e - 1)
  square,   // g(y) = y^2
  custom,
};

// Ordered partition -1 = x_0 < ... < x_N = 1. Immutable after construction;
// endpoints are pinned to exactly +-1.
class Mesh {
 public:
  static Mesh uniform(int cells);
  static Mesh graded(int cells, MeshMap map);
  static Mesh graded(int cells, const std::function<double(double)>& g);
  // Plain text, one node per line, ascending, first -1, last 1.
  static Mesh from_file(const std::string& path);
  static Mesh from_nodes(std::vector<double> nodes);

  int cells() const { return static_cast<int>(widths_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& widths() const { return widths_; }
  MeshMap map() const { return map_; }

 private:
  Mesh(std::vector<double> nodes, MeshMap map);

  std::vector<double> nodes_;
  std::vector<double> widths_;
  MeshMap map_;
};

struct QuasiUniformReport {
  double c_h = 0.0;  // N * min h_i
  double C_h = 0.0;  // N * max h_i
  bool is_quasi_uniform = false;
};

// c_h = N min h_i, C_h = N max h_i; flag true iff C_h/c_h <= ratio_bound.
QuasiUniformReport quasi_uniform_constants(const Mesh& mesh,
                                           double ratio_bound = 100.0);

// N x N diagonal matrix D_h = diag(h_1, ..., h_N).
Eigen::MatrixXd diag_h(const Mesh& mesh);

// Evaluates the named map or its derivative.
double mesh_map_value(MeshMap map, double y);
double mesh_map_derivative(MeshMap map, double y);

}  // namespace wjh
