#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "wjh/jacobi.hpp"
#include "wjh/mesh.hpp"

namespace wjh {

// Mesh-weighted discrete norm, ||v||_h = sqrt(sum h_i v_i^2).
double h_norm(const Mesh& mesh, std::span<const double> v);
double h_norm(const Mesh& mesh, const Eigen::VectorXd& v);

// ||H||_{2->h}, the largest singular value of D_h^{1/2} H.
double op_norm_2_to_h(const Eigen::MatrixXd& h, const Mesh& mesh);

// Largest eigenvalue of the Gram matrix G~_N. Requires alpha, beta > -1/2.
double lambda_max_gram(const JacobiParams& params, int n);

// d_j = int |P_j|^2 w^2 for j = 0..jmax (the Gram diagonal).
std::vector<double> diag_gram_decay(const JacobiParams& params, int jmax);

struct StabilityReport {
  int n = 0;
  double lambda_max_gram = 0.0;
  double log_bound_ratio = 0.0;    // lambda_max / (1 + log N)
  double op_norm_2_to_h = 0.0;
  double inequality_margin = 0.0;  // min over trials of c^T G c - ||Hc||_h^2
};

// Randomized check of ||H c||_h^2 <= c^T G~ c (standard-basis H), plus the
// operator norm and the Gram log-growth ratio. Deterministic for a fixed seed.
StabilityReport verify_stability(const JacobiParams& params, const Mesh& mesh,
                                 int trials, std::uint64_t seed);

// Smallest eigenvalue of G~ - H^T D_h H; the exact form of the stability
// inequality (nonnegative up to quadrature error).
double min_eig_stability_gap(const JacobiParams& params, const Mesh& mesh);

// Eigenvalues of a symmetric matrix, ascending (platform decomposition).
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);

}  // namespace wjh
