#include "wjh/mesh.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wjh {

namespace {

constexpr double kMinSeparation = 1e-14;

void check_cells(int cells) {
  if (cells < 1) throw std::invalid_argument("Mesh: needs at least one cell");
}

}  // namespace

double mesh_map_value(MeshMap map, double y) {
  switch (map) {
    case MeshMap::uniform:
      return y;
    case MeshMap::exp_map:
      return std::expm1(y) / std::expm1(1.0);
    case MeshMap::square:
      return y * y;
    case MeshMap::custom:
      break;
  }
  throw std::invalid_argument("mesh_map_value: custom map has no closed form");
}

double mesh_map_derivative(MeshMap map, double y) {
  switch (map) {
    case MeshMap::uniform:
      return 1.0;
    case MeshMap::exp_map:
      return std::exp(y) / std::expm1(1.0);
    case MeshMap::square:
      return 2.0 * y;
    case MeshMap::custom:
      break;
  }
  throw std::invalid_argument("mesh_map_derivative: custom map has no closed form");
}

Mesh::Mesh(std::vector<double> nodes, MeshMap map)
    : nodes_(std::move(nodes)), map_(map) {
  if (nodes_.size() < 2) throw std::invalid_argument("Mesh: needs at least 2 nodes");
  // Endpoints pinned to exactly +-1 so the weight vanishes there exactly for
  // positive exponents (boundary rows of R_N).
  nodes_.front() = -1.0;
  nodes_.back() = 1.0;
  widths_.resize(nodes_.size() - 1);
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const double h = nodes_[i] - nodes_[i - 1];
    if (!(h >= kMinSeparation)) {
      throw std::invalid_argument("Mesh: nodes must be strictly increasing");
    }
    widths_[i - 1] = h;
  }
}

Mesh Mesh::uniform(int cells) {
  check_cells(cells);
  std::vector<double> nodes(cells + 1);
  for (int i = 0; i <= cells; ++i) nodes[i] = -1.0 + 2.0 * i / cells;
  return Mesh(std::move(nodes), MeshMap::uniform);
}

Mesh Mesh::graded(int cells, MeshMap map) {
  if (map == MeshMap::uniform) return uniform(cells);
  if (map == MeshMap::custom) {
    throw std::invalid_argument("Mesh::graded: custom map needs a callable");
  }
  check_cells(cells);
  std::vector<double> nodes(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    nodes[i] = -1.0 + 2.0 * mesh_map_value(map, static_cast<double>(i) / cells);
  }
  Mesh m(std::move(nodes), map);
  return m;
}

Mesh Mesh::graded(int cells, const std::function<double(double)>& g) {
  check_cells(cells);
  if (!g) throw std::invalid_argument("Mesh::graded: null map");
  std::vector<double> nodes(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    nodes[i] = -1.0 + 2.0 * g(static_cast<double>(i) / cells);
  }
  return Mesh(std::move(nodes), MeshMap::custom);
}

Mesh Mesh::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2 || std::abs(nodes.front() + 1.0) > 1e-12 ||
      std::abs(nodes.back() - 1.0) > 1e-12) {
    throw std::invalid_argument("Mesh::from_nodes: first node must be -1, last 1");
  }
  return Mesh(std::move(nodes), MeshMap::custom);
}

Mesh Mesh::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("Mesh::from_file: cannot open " + path);
  std::vector<double> nodes;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    double v;
    if (ss >> v) nodes.push_back(v);
  }
  return from_nodes(std::move(nodes));
}

QuasiUniformReport quasi_uniform_constants(const Mesh& mesh, double ratio_bound) {
  QuasiUniformReport report;
  const int n = mesh.cells();
  double hmin = mesh.widths()[0];
  double hmax = hmin;
  for (double h : mesh.widths()) {
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  report.c_h = n * hmin;
  report.C_h = n * hmax;
  report.is_quasi_uniform = report.C_h / report.c_h <= ratio_bound;
  return report;
}

Eigen::MatrixXd diag_h(const Mesh& mesh) {
  const int n = mesh.cells();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = mesh.widths()[i];
  return d;
}

}  // namespace wjh
