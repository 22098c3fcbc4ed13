/* Weighted Jacobi histopolation on [-1,1]: C API.
 *
 * Matrix construction, exact-factorization verification, histopolation
 * solving, singular-value / symbol experiments, and stability checks, exposed
 * through opaque handles and error codes. All functions returning wjh_status
 * report WJH_OK on success; on failure the output arguments are untouched and
 * wjh_last_error() describes the problem (thread-local).
 */
#ifndef WJH_H
#define WJH_H

#include <stdint.h>

#if defined(_WIN32)
#define WJH_API __declspec(dllexport)
#else
#define WJH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wjh_status {
  WJH_OK = 0,
  WJH_ERROR_INVALID_ARGUMENT = 1,
  WJH_ERROR_DOMAIN = 2,
  WJH_ERROR_QUADRATURE = 3,
  WJH_ERROR_SINGULAR = 4,
  WJH_ERROR_IO = 5,
  WJH_ERROR_INTERNAL = 6
} wjh_status;

typedef enum wjh_basis {
  WJH_BASIS_SHIFTED = 0,  /* phi_{j-1} = P_{j-1}^{(alpha+1,beta+1)} */
  WJH_BASIS_STANDARD = 1  /* phi_{j-1} = P_{j-1}^{(alpha,beta)} */
} wjh_basis;

typedef enum wjh_mesh_map {
  WJH_MAP_UNIFORM = 0,
  WJH_MAP_EXP = 1,   /* g(y) = (e^y - 1)/(e - 1) */
  WJH_MAP_SQUARE = 2 /* g(y) = y^2 */
} wjh_mesh_map;

typedef enum wjh_scaling_kind {
  WJH_SCALE_NONE = 0,
  WJH_SCALE_DIVIDE_N_POW = 1,       /* A / N^gamma */
  WJH_SCALE_DIVIDE_LOGN_POW = 2,    /* A / (log N)^gamma */
  WJH_SCALE_PREMUL_SQRT_DH_N_POW = 3 /* N^gamma D_h^{1/2} A */
} wjh_scaling_kind;

/* Scalar real function with user context, t in [-1,1]. */
typedef double (*wjh_fn)(double t, void* ctx);

typedef struct wjh_mesh wjh_mesh;
typedef struct wjh_matrix wjh_matrix;
typedef struct wjh_symbol wjh_symbol;
typedef struct wjh_histopolant wjh_histopolant;

WJH_API const char* wjh_version(void);
WJH_API const char* wjh_last_error(void);

/* ---- Jacobi polynomials and coefficient sequences ---- */

WJH_API wjh_status wjh_weight(double alpha, double beta, double t, double* out);
/* out has max_degree+1 entries: P_0..P_max_degree at x. */
WJH_API wjh_status wjh_jacobi_eval(double alpha, double beta, int max_degree,
                                   double x, double* out);
WJH_API wjh_status wjh_jacobi_norm(double alpha, double beta, int degree,
                                   double* out);
WJH_API wjh_status wjh_jacobi_orthonormal(double alpha, double beta, int degree,
                                          double x, double* out);
WJH_API wjh_status wjh_jacobi_derivative(double alpha, double beta, int degree,
                                         double x, double* out);
WJH_API wjh_status wjh_recurrence_coeffs(double alpha, double beta, int degree,
                                         double* a, double* b, double* c);
WJH_API wjh_status wjh_coupling_coeffs(double alpha, double beta, int degree,
                                       double* u, double* d, double* l);

/* ---- Quadrature ---- */

/* nodes and weights each hold n entries. */
WJH_API wjh_status wjh_gauss_legendre(int n, double* nodes, double* weights);
WJH_API wjh_status wjh_integrate_cell(wjh_fn f, void* ctx, double a, double b,
                                      int order, double* out);
WJH_API wjh_status wjh_integrate_weighted(wjh_fn f, void* ctx, double alpha,
                                          double beta, double a, double b,
                                          double tol, double* out);

/* ---- Meshes ---- */

WJH_API wjh_status wjh_mesh_uniform(int cells, wjh_mesh** out);
WJH_API wjh_status wjh_mesh_graded(int cells, wjh_mesh_map map, wjh_mesh** out);
WJH_API wjh_status wjh_mesh_graded_custom(int cells, wjh_fn g, void* ctx,
                                          wjh_mesh** out);
WJH_API wjh_status wjh_mesh_from_file(const char* path, wjh_mesh** out);
WJH_API int wjh_mesh_cells(const wjh_mesh* mesh);
/* out holds cells+1 / cells entries respectively. */
WJH_API wjh_status wjh_mesh_nodes(const wjh_mesh* mesh, double* out);
WJH_API wjh_status wjh_mesh_widths(const wjh_mesh* mesh, double* out);
WJH_API wjh_status wjh_mesh_quasi_uniform(const wjh_mesh* mesh,
                                          double ratio_bound, double* c_h,
                                          double* C_h, int* flag);
WJH_API void wjh_mesh_free(wjh_mesh* mesh);

/* ---- Matrices ---- */

WJH_API int wjh_matrix_rows(const wjh_matrix* m);
WJH_API int wjh_matrix_cols(const wjh_matrix* m);
WJH_API wjh_status wjh_matrix_get(const wjh_matrix* m, int i, int j, double* out);
/* Row-major copy into out (rows*cols entries). */
WJH_API wjh_status wjh_matrix_copy(const wjh_matrix* m, double* out);
WJH_API wjh_status wjh_matrix_export_csv(const wjh_matrix* m, const char* path);
WJH_API wjh_status wjh_matrix_export_binary(const wjh_matrix* m, const char* path);
WJH_API void wjh_matrix_free(wjh_matrix* m);

WJH_API wjh_status wjh_build_h(double alpha, double beta, const wjh_mesh* mesh,
                               wjh_basis basis, wjh_matrix** out);
WJH_API wjh_status wjh_build_delta(const wjh_mesh* mesh, wjh_matrix** out);
WJH_API wjh_status wjh_build_psi(double alpha, double beta, const wjh_mesh* mesh,
                                 wjh_matrix** out);
WJH_API wjh_status wjh_build_r(double alpha, double beta, const wjh_mesh* mesh,
                               wjh_matrix** out);
WJH_API wjh_status wjh_build_iext(double alpha, double beta, const wjh_mesh* mesh,
                                  wjh_matrix** out);
WJH_API wjh_status wjh_build_tj(double alpha, double beta, int n, wjh_matrix** out);
WJH_API wjh_status wjh_build_gram(double alpha, double beta, int n,
                                  wjh_matrix** out);
WJH_API wjh_status wjh_build_diag_h(const wjh_mesh* mesh, wjh_matrix** out);

/* r1 = ||H - Delta Psi||_F/||H||_F, r2 = ||Psi - R - Iext T||_F/||Psi||_F. */
WJH_API wjh_status wjh_verify_factorization(double alpha, double beta,
                                            const wjh_mesh* mesh, double* r1,
                                            double* r2);
/* Max pointwise residuals of the integration-by-parts identity (l24) and the
 * tridiagonal locality identity (l25) over j = 1..jmax at npoints samples. */
WJH_API wjh_status wjh_lemma_identities(double alpha, double beta, int jmax,
                                        int npoints, double* l24, double* l25);
WJH_API wjh_status wjh_cell_averages(wjh_fn f, void* ctx, double alpha,
                                     double beta, const wjh_mesh* mesh,
                                     double* out);

/* ---- Singular values and symbols ---- */

/* out holds min(rows, cols) entries, descending. */
WJH_API wjh_status wjh_singular_values(const wjh_matrix* m, double* out);
WJH_API wjh_status wjh_threshold_fraction(const double* svals, int len,
                                          double eps, int n, double* out);
WJH_API wjh_status wjh_apply_scaling(const wjh_matrix* m, wjh_scaling_kind kind,
                                     double gamma, const wjh_mesh* mesh_or_null,
                                     int n, wjh_matrix** out);
WJH_API wjh_status wjh_symbol_tj(double alpha, double beta, int grid_m,
                                 double trim_lo, double trim_hi,
                                 wjh_symbol** out);
WJH_API wjh_status wjh_symbol_delta(wjh_mesh_map map, int grid_m, double trim_lo,
                                    double trim_hi, wjh_symbol** out);
WJH_API wjh_status wjh_symbol_delta_from_mesh(const wjh_mesh* mesh, int grid_m,
                                              double trim_lo, double trim_hi,
                                              wjh_symbol** out);
WJH_API int wjh_symbol_size(const wjh_symbol* s);
WJH_API wjh_status wjh_symbol_values(const wjh_symbol* s, double* out);
/* Value of the descending quantile function at u in [0,1]. */
WJH_API wjh_status wjh_symbol_quantile(const wjh_symbol* s, double u, double* out);
WJH_API wjh_status wjh_compare_rearrangements(const double* svals, int len,
                                              const wjh_symbol* s,
                                              double* max_rel_dev,
                                              double* mean_rel_dev);
WJH_API void wjh_symbol_free(wjh_symbol* s);

/* ---- Stability ---- */

typedef struct wjh_stability_report {
  int n;
  double lambda_max_gram;
  double log_bound_ratio;
  double op_norm_2_to_h;
  double inequality_margin;
} wjh_stability_report;

WJH_API wjh_status wjh_h_norm(const wjh_mesh* mesh, const double* v, int len,
                              double* out);
WJH_API wjh_status wjh_op_norm_2_to_h(const wjh_matrix* h, const wjh_mesh* mesh,
                                      double* out);
WJH_API wjh_status wjh_lambda_max_gram(double alpha, double beta, int n,
                                       double* out);
WJH_API wjh_status wjh_verify_stability(double alpha, double beta,
                                        const wjh_mesh* mesh, int trials,
                                        uint64_t seed,
                                        wjh_stability_report* out);
/* Smallest eigenvalue of G~ - H^T D_h H (exact inequality check). */
WJH_API wjh_status wjh_stability_gap(double alpha, double beta,
                                     const wjh_mesh* mesh, double* out);
/* out holds jmax+1 entries d_j = int |P_j|^2 w^2. */
WJH_API wjh_status wjh_diag_gram_decay(double alpha, double beta, int jmax,
                                       double* out);

/* ---- Histopolation ---- */

/* b holds N cell averages; residual may be NULL. Fails with
 * WJH_ERROR_SINGULAR when the condition estimate exceeds 1e14. */
WJH_API wjh_status wjh_solve_histopolation(double alpha, double beta,
                                           const wjh_mesh* mesh, wjh_basis basis,
                                           const double* b,
                                           wjh_histopolant** out,
                                           double* residual);
WJH_API int wjh_histopolant_size(const wjh_histopolant* p);
WJH_API wjh_status wjh_histopolant_coeffs(const wjh_histopolant* p, double* out);
WJH_API wjh_status wjh_histopolant_eval(const wjh_histopolant* p, double x,
                                        double* out);
WJH_API wjh_status wjh_verify_averages(const wjh_histopolant* p,
                                       const wjh_mesh* mesh, const double* b,
                                       double* max_residual);
WJH_API void wjh_histopolant_free(wjh_histopolant* p);

#ifdef __cplusplus
}
#endif

#endif /* WJH_H */
