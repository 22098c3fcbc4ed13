#include "wjh/wjh.h"

#include <cstring>
#include <string>

#include "wjh/errors.hpp"
#include "wjh/jacobi.hpp"
#include "wjh/matrix_io.hpp"
#include "wjh/mesh.hpp"
#include "wjh/operators.hpp"
#include "wjh/quadrature.hpp"
#include "wjh/reconstruct.hpp"
#include "wjh/spectral.hpp"
#include "wjh/stability.hpp"

struct wjh_mesh {
  wjh::Mesh mesh;
};

struct wjh_matrix {
  Eigen::MatrixXd m;
};

struct wjh_symbol {
  wjh::SymbolSamples s;
};

struct wjh_histopolant {
  wjh::Histopolant p;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
wjh_status guarded(F&& body) {
  try {
    body();
    return WJH_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return WJH_ERROR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return WJH_ERROR_DOMAIN;
  } catch (const wjh::QuadratureError& e) {
    g_last_error = e.what();
    return WJH_ERROR_QUADRATURE;
  } catch (const wjh::SingularMatrixError& e) {
    g_last_error = e.what();
    return WJH_ERROR_SINGULAR;
  } catch (const wjh::DecompositionError& e) {
    g_last_error = e.what();
    return WJH_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WJH_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return WJH_ERROR_INTERNAL;
  }
}

wjh_status require(bool ok, const char* message) {
  if (ok) return WJH_OK;
  g_last_error = message;
  return WJH_ERROR_INVALID_ARGUMENT;
}

wjh::HistoBasis to_basis(wjh_basis basis) {
  return basis == WJH_BASIS_STANDARD ? wjh::HistoBasis::standard
                                     : wjh::HistoBasis::shifted;
}

wjh::MeshMap to_map(wjh_mesh_map map) {
  switch (map) {
    case WJH_MAP_UNIFORM:
      return wjh::MeshMap::uniform;
    case WJH_MAP_EXP:
      return wjh::MeshMap::exp_map;
    case WJH_MAP_SQUARE:
      return wjh::MeshMap::square;
  }
  throw std::invalid_argument("unknown mesh map");
}

std::function<double(double)> to_function(wjh_fn f, void* ctx) {
  if (f == nullptr) throw std::invalid_argument("null function pointer");
  return [f, ctx](double t) { return f(t, ctx); };
}

}  // namespace

extern "C" {

const char* wjh_version(void) { return "0.1.0"; }

const char* wjh_last_error(void) { return g_last_error.c_str(); }

/* ---- Jacobi ---- */

wjh_status wjh_weight(double alpha, double beta, double t, double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_weight: null output")) return s;
  return guarded([&] { *out = wjh::weight(wjh::JacobiParams(alpha, beta), t); });
}

wjh_status wjh_jacobi_eval(double alpha, double beta, int max_degree, double x,
                           double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_jacobi_eval: null output")) return s;
  return guarded([&] {
    wjh::eval_jacobi(wjh::JacobiParams(alpha, beta), max_degree, x,
                     std::span<double>(out, max_degree + 1));
  });
}

wjh_status wjh_jacobi_norm(double alpha, double beta, int degree, double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_jacobi_norm: null output")) return s;
  return guarded([&] { *out = wjh::jacobi_norm(wjh::JacobiParams(alpha, beta), degree); });
}

wjh_status wjh_jacobi_orthonormal(double alpha, double beta, int degree, double x,
                                  double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_jacobi_orthonormal: null output")) return s;
  return guarded(
      [&] { *out = wjh::eval_orthonormal(wjh::JacobiParams(alpha, beta), degree, x); });
}

wjh_status wjh_jacobi_derivative(double alpha, double beta, int degree, double x,
                                 double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_jacobi_derivative: null output")) return s;
  return guarded([&] {
    *out = wjh::eval_jacobi_derivative(wjh::JacobiParams(alpha, beta), degree, x);
  });
}

wjh_status wjh_recurrence_coeffs(double alpha, double beta, int degree, double* a,
                                 double* b, double* c) {
  if (wjh_status s = require(a && b && c, "wjh_recurrence_coeffs: null output")) return s;
  return guarded([&] {
    const wjh::RecurrenceCoeffs r =
        wjh::recurrence_coeffs(wjh::JacobiParams(alpha, beta), degree);
    *a = r.a;
    *b = r.b;
    *c = r.c;
  });
}

wjh_status wjh_coupling_coeffs(double alpha, double beta, int degree, double* u,
                               double* d, double* l) {
  if (wjh_status s = require(u && d && l, "wjh_coupling_coeffs: null output")) return s;
  return guarded([&] {
    const wjh::CouplingCoeffs c =
        wjh::coupling_coeffs(wjh::JacobiParams(alpha, beta), degree);
    *u = c.u;
    *d = c.d;
    *l = c.l;
  });
}

/* ---- Quadrature ---- */

wjh_status wjh_gauss_legendre(int n, double* nodes, double* weights) {
  if (wjh_status s = require(nodes && weights, "wjh_gauss_legendre: null output")) return s;
  return guarded([&] {
    const wjh::QuadratureRule& rule = wjh::gauss_legendre(n);
    std::memcpy(nodes, rule.nodes.data(), sizeof(double) * n);
    std::memcpy(weights, rule.weights.data(), sizeof(double) * n);
  });
}

wjh_status wjh_integrate_cell(wjh_fn f, void* ctx, double a, double b, int order,
                              double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_integrate_cell: null output")) return s;
  return guarded([&] { *out = wjh::integrate_cell(to_function(f, ctx), a, b, order); });
}

wjh_status wjh_integrate_weighted(wjh_fn f, void* ctx, double alpha, double beta,
                                  double a, double b, double tol, double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_integrate_weighted: null output")) return s;
  return guarded([&] {
    *out = wjh::integrate_weighted(to_function(f, ctx), wjh::JacobiParams(alpha, beta),
                                   a, b, tol);
  });
}

/* ---- Mesh ---- */

wjh_status wjh_mesh_uniform(int cells, wjh_mesh** out) {
  if (wjh_status s = require(out != nullptr, "wjh_mesh_uniform: null output")) return s;
  return guarded([&] { *out = new wjh_mesh{wjh::Mesh::uniform(cells)}; });
}

wjh_status wjh_mesh_graded(int cells, wjh_mesh_map map, wjh_mesh** out) {
  if (wjh_status s = require(out != nullptr, "wjh_mesh_graded: null output")) return s;
  return guarded([&] { *out = new wjh_mesh{wjh::Mesh::graded(cells, to_map(map))}; });
}

wjh_status wjh_mesh_graded_custom(int cells, wjh_fn g, void* ctx, wjh_mesh** out) {
  if (wjh_status s = require(out != nullptr, "wjh_mesh_graded_custom: null output")) return s;
  return guarded([&] { *out = new wjh_mesh{wjh::Mesh::graded(cells, to_function(g, ctx))}; });
}

wjh_status wjh_mesh_from_file(const char* path, wjh_mesh** out) {
  if (wjh_status s = require(out != nullptr && path != nullptr,
                             "wjh_mesh_from_file: null argument")) {
    return s;
  }
  return guarded([&] { *out = new wjh_mesh{wjh::Mesh::from_file(path)}; });
}

int wjh_mesh_cells(const wjh_mesh* mesh) {
  return mesh == nullptr ? 0 : mesh->mesh.cells();
}

wjh_status wjh_mesh_nodes(const wjh_mesh* mesh, double* out) {
  if (wjh_status s = require(mesh && out, "wjh_mesh_nodes: null argument")) return s;
  std::memcpy(out, mesh->mesh.nodes().data(),
              sizeof(double) * mesh->mesh.nodes().size());
  return WJH_OK;
}

wjh_status wjh_mesh_widths(const wjh_mesh* mesh, double* out) {
  if (wjh_status s = require(mesh && out, "wjh_mesh_widths: null argument")) return s;
  std::memcpy(out, mesh->mesh.widths().data(),
              sizeof(double) * mesh->mesh.widths().size());
  return WJH_OK;
}

wjh_status wjh_mesh_quasi_uniform(const wjh_mesh* mesh, double ratio_bound,
                                  double* c_h, double* C_h, int* flag) {
  if (wjh_status s = require(mesh && c_h && C_h && flag,
                             "wjh_mesh_quasi_uniform: null argument")) {
    return s;
  }
  return guarded([&] {
    const wjh::QuasiUniformReport r = wjh::quasi_uniform_constants(mesh->mesh, ratio_bound);
    *c_h = r.c_h;
    *C_h = r.C_h;
    *flag = r.is_quasi_uniform ? 1 : 0;
  });
}

void wjh_mesh_free(wjh_mesh* mesh) { delete mesh; }

/* ---- Matrices ---- */

int wjh_matrix_rows(const wjh_matrix* m) {
  return m == nullptr ? 0 : static_cast<int>(m->m.rows());
}

int wjh_matrix_cols(const wjh_matrix* m) {
  return m == nullptr ? 0 : static_cast<int>(m->m.cols());
}

wjh_status wjh_matrix_get(const wjh_matrix* m, int i, int j, double* out) {
  if (wjh_status s = require(m && out, "wjh_matrix_get: null argument")) return s;
  if (wjh_status s = require(i >= 0 && i < m->m.rows() && j >= 0 && j < m->m.cols(),
                             "wjh_matrix_get: index out of range")) {
    return s;
  }
  *out = m->m(i, j);
  return WJH_OK;
}

wjh_status wjh_matrix_copy(const wjh_matrix* m, double* out) {
  if (wjh_status s = require(m && out, "wjh_matrix_copy: null argument")) return s;
  for (Eigen::Index i = 0; i < m->m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m->m.cols(); ++j) {
      out[i * m->m.cols() + j] = m->m(i, j);
    }
  }
  return WJH_OK;
}

wjh_status wjh_matrix_export_csv(const wjh_matrix* m, const char* path) {
  if (wjh_status s = require(m && path, "wjh_matrix_export_csv: null argument")) return s;
  return guarded([&] { wjh::export_csv(m->m, path); });
}

wjh_status wjh_matrix_export_binary(const wjh_matrix* m, const char* path) {
  if (wjh_status s = require(m && path, "wjh_matrix_export_binary: null argument")) return s;
  return guarded([&] { wjh::export_binary(m->m, path); });
}

void wjh_matrix_free(wjh_matrix* m) { delete m; }

wjh_status wjh_build_h(double alpha, double beta, const wjh_mesh* mesh,
                       wjh_basis basis, wjh_matrix** out) {
  if (wjh_status s = require(mesh && out, "wjh_build_h: null argument")) return s;
  return guarded([&] {
    *out = new wjh_matrix{
        wjh::build_h(wjh::JacobiParams(alpha, beta), mesh->mesh, to_basis(basis))};
  });
}

wjh_status wjh_build_delta(const wjh_mesh* mesh, wjh_matrix** out) {
  if (wjh_status s = require(mesh && out, "wjh_build_delta: null argument")) return s;
  return guarded([&] { *out = new wjh_matrix{wjh::build_delta(mesh->mesh)}; });
}

wjh_status wjh_build_psi(double alpha, double beta, const wjh_mesh* mesh,
                         wjh_matrix** out) {
  if (wjh_status s = require(mesh && out, "wjh_build_psi: null argument")) return s;
  return guarded([&] {
    *out = new wjh_matrix{wjh::build_psi(wjh::JacobiParams(alpha, beta), mesh->mesh)};
  });
}

wjh_status wjh_build_r(double alpha, double beta, const wjh_mesh* mesh,
                       wjh_matrix** out) {
  if (wjh_status s = require(mesh && out, "wjh_build_r: null argument")) return s;
  return guarded([&] {
    *out = new wjh_matrix{wjh::build_r(wjh::JacobiParams(alpha, beta), mesh->mesh)};
  });
}

wjh_status wjh_build_iext(double alpha, double beta, const wjh_mesh* mesh,
                          wjh_matrix** out) {
  if (wjh_status s = require(mesh && out, "wjh_build_iext: null argument")) return s;
  return guarded([&] {
    *out = new wjh_matrix{wjh::build_iext(wjh::JacobiParams(alpha, beta), mesh->mesh)};
  });
}

wjh_status wjh_build_tj(double alpha, double beta, int n, wjh_matrix** out) {
  if (wjh_status s = require(out != nullptr, "wjh_build_tj: null output")) return s;
  return guarded(
      [&] { *out = new wjh_matrix{wjh::build_tj(wjh::JacobiParams(alpha, beta), n)}; });
}

wjh_status wjh_build_gram(double alpha, double beta, int n, wjh_matrix** out) {
  if (wjh_status s = require(out != nullptr, "wjh_build_gram: null output")) return s;
  return guarded(
      [&] { *out = new wjh_matrix{wjh::build_gram(wjh::JacobiParams(alpha, beta), n)}; });
}

wjh_status wjh_build_diag_h(const wjh_mesh* mesh, wjh_matrix** out) {
  if (wjh_status s = require(mesh && out, "wjh_build_diag_h: null argument")) return s;
  return guarded([&] { *out = new wjh_matrix{wjh::diag_h(mesh->mesh)}; });
}

wjh_status wjh_verify_factorization(double alpha, double beta, const wjh_mesh* mesh,
                                    double* r1, double* r2) {
  if (wjh_status s = require(mesh && r1 && r2, "wjh_verify_factorization: null argument")) {
    return s;
  }
  return guarded([&] {
    const wjh::FactorizationReport r =
        wjh::verify_factorization(wjh::JacobiParams(alpha, beta), mesh->mesh);
    *r1 = r.r1;
    *r2 = r.r2;
  });
}

wjh_status wjh_lemma_identities(double alpha, double beta, int jmax, int npoints,
                                double* l24, double* l25) {
  if (wjh_status s = require(l24 && l25, "wjh_lemma_identities: null output")) return s;
  return guarded([&] {
    const wjh::LemmaReport r =
        wjh::lemma_identities(wjh::JacobiParams(alpha, beta), jmax, npoints);
    *l24 = r.lemma24_max;
    *l25 = r.lemma25_max;
  });
}

wjh_status wjh_cell_averages(wjh_fn f, void* ctx, double alpha, double beta,
                             const wjh_mesh* mesh, double* out) {
  if (wjh_status s = require(mesh && out, "wjh_cell_averages: null argument")) return s;
  return guarded([&] {
    const std::vector<double> b = wjh::cell_averages(
        to_function(f, ctx), wjh::JacobiParams(alpha, beta), mesh->mesh);
    std::memcpy(out, b.data(), sizeof(double) * b.size());
  });
}

/* ---- Spectral ---- */

wjh_status wjh_singular_values(const wjh_matrix* m, double* out) {
  if (wjh_status s = require(m && out, "wjh_singular_values: null argument")) return s;
  return guarded([&] {
    const std::vector<double> s = wjh::singular_values(m->m);
    std::memcpy(out, s.data(), sizeof(double) * s.size());
  });
}

wjh_status wjh_threshold_fraction(const double* svals, int len, double eps, int n,
                                  double* out) {
  if (wjh_status s = require(svals && out && len >= 0,
                             "wjh_threshold_fraction: null argument")) {
    return s;
  }
  return guarded([&] {
    *out = wjh::threshold_fraction(std::span<const double>(svals, len), eps, n);
  });
}

wjh_status wjh_apply_scaling(const wjh_matrix* m, wjh_scaling_kind kind,
                             double gamma, const wjh_mesh* mesh_or_null, int n,
                             wjh_matrix** out) {
  if (wjh_status s = require(m && out, "wjh_apply_scaling: null argument")) return s;
  return guarded([&] {
    wjh::ScalingSpec spec;
    spec.gamma = gamma;
    switch (kind) {
      case WJH_SCALE_NONE:
        spec.kind = wjh::ScalingSpec::Kind::none;
        break;
      case WJH_SCALE_DIVIDE_N_POW:
        spec.kind = wjh::ScalingSpec::Kind::divide_n_pow;
        break;
      case WJH_SCALE_DIVIDE_LOGN_POW:
        spec.kind = wjh::ScalingSpec::Kind::divide_logn_pow;
        break;
      case WJH_SCALE_PREMUL_SQRT_DH_N_POW:
        spec.kind = wjh::ScalingSpec::Kind::premultiply_sqrt_dh_n_pow;
        break;
      default:
        throw std::invalid_argument("wjh_apply_scaling: unknown scaling kind");
    }
    *out = new wjh_matrix{wjh::apply_scaling(
        m->m, spec, mesh_or_null ? &mesh_or_null->mesh : nullptr, n)};
  });
}

wjh_status wjh_symbol_tj(double alpha, double beta, int grid_m, double trim_lo,
                         double trim_hi, wjh_symbol** out) {
  if (wjh_status s = require(out != nullptr, "wjh_symbol_tj: null output")) return s;
  return guarded([&] {
    *out = new wjh_symbol{wjh::sample_symbol_tj(wjh::JacobiParams(alpha, beta), grid_m,
                                                trim_lo, trim_hi)};
  });
}

wjh_status wjh_symbol_delta(wjh_mesh_map map, int grid_m, double trim_lo,
                            double trim_hi, wjh_symbol** out) {
  if (wjh_status s = require(out != nullptr, "wjh_symbol_delta: null output")) return s;
  return guarded([&] {
    *out = new wjh_symbol{wjh::sample_symbol_delta(to_map(map), grid_m, trim_lo, trim_hi)};
  });
}

wjh_status wjh_symbol_delta_from_mesh(const wjh_mesh* mesh, int grid_m,
                                      double trim_lo, double trim_hi,
                                      wjh_symbol** out) {
  if (wjh_status s = require(mesh && out, "wjh_symbol_delta_from_mesh: null argument")) {
    return s;
  }
  return guarded([&] {
    *out = new wjh_symbol{wjh::sample_symbol_delta(mesh->mesh, grid_m, trim_lo, trim_hi)};
  });
}

int wjh_symbol_size(const wjh_symbol* s) {
  return s == nullptr ? 0 : static_cast<int>(s->s.values.size());
}

wjh_status wjh_symbol_values(const wjh_symbol* s, double* out) {
  if (wjh_status st = require(s && out, "wjh_symbol_values: null argument")) return st;
  std::memcpy(out, s->s.values.data(), sizeof(double) * s->s.values.size());
  return WJH_OK;
}

wjh_status wjh_symbol_quantile(const wjh_symbol* s, double u, double* out) {
  if (wjh_status st = require(s && out, "wjh_symbol_quantile: null argument")) return st;
  return guarded([&] { *out = wjh::symbol_quantile(s->s, u); });
}

wjh_status wjh_compare_rearrangements(const double* svals, int len,
                                      const wjh_symbol* s, double* max_rel_dev,
                                      double* mean_rel_dev) {
  if (wjh_status st = require(svals && s && max_rel_dev && mean_rel_dev && len >= 0,
                              "wjh_compare_rearrangements: null argument")) {
    return st;
  }
  return guarded([&] {
    const wjh::RearrangementComparison r =
        wjh::compare_rearrangements(std::span<const double>(svals, len), s->s);
    *max_rel_dev = r.max_rel_dev;
    *mean_rel_dev = r.mean_rel_dev;
  });
}

void wjh_symbol_free(wjh_symbol* s) { delete s; }

/* ---- Stability ---- */

wjh_status wjh_h_norm(const wjh_mesh* mesh, const double* v, int len, double* out) {
  if (wjh_status s = require(mesh && v && out, "wjh_h_norm: null argument")) return s;
  return guarded(
      [&] { *out = wjh::h_norm(mesh->mesh, std::span<const double>(v, len)); });
}

wjh_status wjh_op_norm_2_to_h(const wjh_matrix* h, const wjh_mesh* mesh,
                              double* out) {
  if (wjh_status s = require(h && mesh && out, "wjh_op_norm_2_to_h: null argument")) {
    return s;
  }
  return guarded([&] { *out = wjh::op_norm_2_to_h(h->m, mesh->mesh); });
}

wjh_status wjh_lambda_max_gram(double alpha, double beta, int n, double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_lambda_max_gram: null output")) return s;
  return guarded(
      [&] { *out = wjh::lambda_max_gram(wjh::JacobiParams(alpha, beta), n); });
}

wjh_status wjh_verify_stability(double alpha, double beta, const wjh_mesh* mesh,
                                int trials, uint64_t seed,
                                wjh_stability_report* out) {
  if (wjh_status s = require(mesh && out, "wjh_verify_stability: null argument")) return s;
  return guarded([&] {
    const wjh::StabilityReport r =
        wjh::verify_stability(wjh::JacobiParams(alpha, beta), mesh->mesh, trials, seed);
    out->n = r.n;
    out->lambda_max_gram = r.lambda_max_gram;
    out->log_bound_ratio = r.log_bound_ratio;
    out->op_norm_2_to_h = r.op_norm_2_to_h;
    out->inequality_margin = r.inequality_margin;
  });
}

wjh_status wjh_stability_gap(double alpha, double beta, const wjh_mesh* mesh,
                             double* out) {
  if (wjh_status s = require(mesh && out, "wjh_stability_gap: null argument")) return s;
  return guarded([&] {
    *out = wjh::min_eig_stability_gap(wjh::JacobiParams(alpha, beta), mesh->mesh);
  });
}

wjh_status wjh_diag_gram_decay(double alpha, double beta, int jmax, double* out) {
  if (wjh_status s = require(out != nullptr, "wjh_diag_gram_decay: null output")) return s;
  return guarded([&] {
    const std::vector<double> d =
        wjh::diag_gram_decay(wjh::JacobiParams(alpha, beta), jmax);
    std::memcpy(out, d.data(), sizeof(double) * d.size());
  });
}

/* ---- Histopolation ---- */

wjh_status wjh_solve_histopolation(double alpha, double beta, const wjh_mesh* mesh,
                                   wjh_basis basis, const double* b,
                                   wjh_histopolant** out, double* residual) {
  if (wjh_status s = require(mesh && b && out, "wjh_solve_histopolation: null argument")) {
    return s;
  }
  return guarded([&] {
    const wjh::SolveResult r = wjh::solve_histopolation(
        wjh::JacobiParams(alpha, beta), mesh->mesh, to_basis(basis),
        std::span<const double>(b, mesh->mesh.cells()));
    *out = new wjh_histopolant{r.p};
    if (residual != nullptr) *residual = r.residual;
  });
}

int wjh_histopolant_size(const wjh_histopolant* p) {
  return p == nullptr ? 0 : static_cast<int>(p->p.coeffs.size());
}

wjh_status wjh_histopolant_coeffs(const wjh_histopolant* p, double* out) {
  if (wjh_status s = require(p && out, "wjh_histopolant_coeffs: null argument")) return s;
  std::memcpy(out, p->p.coeffs.data(), sizeof(double) * p->p.coeffs.size());
  return WJH_OK;
}

wjh_status wjh_histopolant_eval(const wjh_histopolant* p, double x, double* out) {
  if (wjh_status s = require(p && out, "wjh_histopolant_eval: null argument")) return s;
  return guarded([&] { *out = wjh::evaluate_histopolant(p->p, x); });
}

wjh_status wjh_verify_averages(const wjh_histopolant* p, const wjh_mesh* mesh,
                               const double* b, double* max_residual) {
  if (wjh_status s = require(p && mesh && b && max_residual,
                             "wjh_verify_averages: null argument")) {
    return s;
  }
  return guarded([&] {
    *max_residual = wjh::verify_averages(
        p->p, mesh->mesh, std::span<const double>(b, mesh->mesh.cells()));
  });
}

void wjh_histopolant_free(wjh_histopolant* p) { delete p; }

}  // extern "C"
