#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "wjh/jacobi.hpp"
#include "wjh/mesh.hpp"

namespace wjh {

// Basis of the reconstruction space P_{N-1}. The shifted basis
// phi_{j-1} = P_{j-1}^{(alpha+1,beta+1)} drives the factorization identities;
// the standard basis phi_{j-1} = P_{j-1}^{(alpha,beta)} drives the stability
// bounds. Both assemble the same kind of histopolation matrix.
enum class HistoBasis { shifted, standard };

JacobiParams basis_params(const JacobiParams& params, HistoBasis basis);

// Histopolation matrix, [H]_{i,j} = (1/h_i) int_{s_i} phi_{j-1} w_{alpha,beta}.
// N x N, entries by weighted panel quadrature.
Eigen::MatrixXd build_h(const JacobiParams& params, const Mesh& mesh,
                        HistoBasis basis);

// Backward difference operator, N x (N+1): [Delta u]_i = (u_i - u_{i-1})/h_i.
Eigen::MatrixXd build_delta(const Mesh& mesh);

// psi_j sampled at all mesh nodes (size N+1), by per-cell prefix accumulation:
// psi_j(x_k) = sum over cells up to k of int P_{j-1}^{(alpha+1,beta+1)} w.
// Requires 1 <= j.
std::vector<double> primitive_psi(const JacobiParams& params, int j,
                                  const Mesh& mesh);

// Primitive sampling matrix, (N+1) x N, column j = primitive_psi(j).
Eigen::MatrixXd build_psi(const JacobiParams& params, const Mesh& mesh);

// I_j(x) = int_{-1}^x P_j^{(alpha,beta)} w_{alpha-1,beta-1}; requires
// alpha, beta > 0 so the lowered weight is integrable.
double primitive_I(const JacobiParams& params, int j, double x);

// J_j(x) = int_{-1}^x t P_j^{(alpha,beta)}(t) w_{alpha-1,beta-1}(t) dt.
double primitive_J(const JacobiParams& params, int j, double x);

// Residual matrix, (N+1) x N: [R]_{k+1,j} = 2/(j+sigma+1) P_j(x_k) w(x_k).
// First and last rows are exactly zero for alpha, beta > 0.
Eigen::MatrixXd build_r(const JacobiParams& params, const Mesh& mesh);

// Extended primitive matrix, (N+1) x (N+2): [Iext]_{k+1,r+1} = I_r(x_k),
// computed by per-cell prefix accumulation per column.
Eigen::MatrixXd build_iext(const JacobiParams& params, const Mesh& mesh);

// Tridiagonal coupling matrix, (N+2) x N, column j carries (l_j, d_j, u_j)
// on rows j, j+1, j+2.
Eigen::MatrixXd build_tj(const JacobiParams& params, int n);

// Gram matrix of the standard basis against the squared weight,
// [G]_{l,k} = int P_{l-1} P_{k-1} w^2. Requires alpha, beta > -1/2.
Eigen::MatrixXd build_gram(const JacobiParams& params, int n);

// Weighted cell averages b_i = (1/h_i) int_{s_i} f w.
std::vector<double> cell_averages(const std::function<double(double)>& f,
                                  const JacobiParams& params, const Mesh& mesh);

struct FactorizationReport {
  double r1 = 0.0;  // ||H - Delta Psi||_F / ||H||_F
  double r2 = 0.0;  // ||Psi - R - Iext T||_F / ||Psi||_F
};

// Numerical check of the two exact identities H = Delta Psi and
// Psi = R + Iext T^(J) in the shifted basis. Requires alpha, beta > 0.
FactorizationReport verify_factorization(const JacobiParams& params,
                                         const Mesh& mesh);

struct LemmaReport {
  double lemma24_max = 0.0;  // integration-by-parts identity for psi_j
  double lemma25_max = 0.0;  // tridiagonal locality J_j = a I_{j+1} + b I_j + c I_{j-1}
};

// Max pointwise residual of the two primitive identities over j = 1..jmax at
// npoints equispaced samples of [-1,1]. Requires alpha, beta > 0.
LemmaReport lemma_identities(const JacobiParams& params, int jmax, int npoints);

namespace detail {

// int_a^b t^moment P_j^{(basis)} w_{weight} dt for all j = 0..max_degree at
// once; one recurrence pass per quadrature node.
std::vector<double> basis_cell_integrals(const JacobiRecurrence& basis,
                                         const JacobiParams& weight_params,
                                         double a, double b, int moment = 0);

}  // namespace detail

}  // namespace wjh
