// Acceptance suite: runs every contract criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "wjh/jacobi.hpp"
#include "wjh/mesh.hpp"
#include "wjh/operators.hpp"
#include "wjh/reconstruct.hpp"
#include "wjh/spectral.hpp"
#include "wjh/stability.hpp"

using wjh::HistoBasis;
using wjh::JacobiParams;
using wjh::Mesh;
using wjh::MeshMap;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

const std::vector<std::pair<double, double>> kFactorizationParams = {{2.0, 2.0},
                                                                     {1.5, 1.0}};
const std::vector<MeshMap> kMeshSweep = {MeshMap::uniform, MeshMap::exp_map,
                                         MeshMap::square};

std::string param_tag(double a, double b) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "(%g,%g)", a, b);
  return buf;
}

// Criteria 1 + 2: exact factorization H = Delta Psi and decomposition
// Psi = R + Iext T^(J), Frobenius-relative residuals.
void criteria_factorization() {
  double worst_r1 = 0.0, worst_r2 = 0.0;
  std::string where_r1 = "-", where_r2 = "-";
  for (const auto& [a, b] : kFactorizationParams) {
    for (MeshMap map : kMeshSweep) {
      for (int n : {16, 64, 256}) {
        const auto rep =
            wjh::verify_factorization(JacobiParams(a, b), Mesh::graded(n, map));
        if (rep.r1 > worst_r1) {
          worst_r1 = rep.r1;
          where_r1 = param_tag(a, b) + " N=" + std::to_string(n);
        }
        if (rep.r2 > worst_r2) {
          worst_r2 = rep.r2;
          where_r2 = param_tag(a, b) + " N=" + std::to_string(n);
        }
      }
    }
  }
  char d1[128], d2[128];
  std::snprintf(d1, sizeof(d1), "max r1 = %.3e at %s, tol 1e-9", worst_r1,
                where_r1.c_str());
  std::snprintf(d2, sizeof(d2), "max r2 = %.3e at %s, tol 1e-8", worst_r2,
                where_r2.c_str());
  report(1, "exact factorization residual", worst_r1 <= 1e-9, d1);
  report(2, "tridiagonal decomposition residual", worst_r2 <= 1e-8, d2);
}

// Criterion 3: integration-by-parts and tridiagonal-locality identities,
// pointwise at 51 samples up to j = 30.
void criterion_lemmas() {
  double worst = 0.0;
  for (const auto& [a, b] : kFactorizationParams) {
    const auto rep = wjh::lemma_identities(JacobiParams(a, b), 30, 51);
    worst = std::max({worst, rep.lemma24_max, rep.lemma25_max});
  }
  char d[96];
  std::snprintf(d, sizeof(d), "max pointwise residual = %.3e, tol 1e-8", worst);
  report(3, "primitive lemma identities", worst <= 1e-8, d);
}

// Criterion 4: unisolvence (sigma_min > 0 up to N = 64 across the sweep) and
// polynomial reproduction at the 1e-7 * cond scale.
void criterion_unisolvence() {
  double min_sigma = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : kFactorizationParams) {
    for (MeshMap map : kMeshSweep) {
      for (int n : {16, 64}) {
        const auto sv = wjh::singular_values(
            wjh::build_h(JacobiParams(a, b), Mesh::graded(n, map), HistoBasis::shifted));
        min_sigma = std::min(min_sigma, sv.back());
      }
    }
  }

  const JacobiParams p(2.0, 2.0);
  const Mesh mesh = Mesh::uniform(16);
  wjh::Histopolant target{std::vector<double>(16, 0.0), HistoBasis::shifted, p};
  target.coeffs[2] = 1.0;
  target.coeffs[7] = -0.25;
  const auto data = wjh::cell_averages(
      [&target](double t) { return wjh::evaluate_histopolant(target, t); }, p, mesh);
  const auto solved = wjh::solve_histopolation(p, mesh, HistoBasis::shifted, data);
  double coeff_err = 0.0;
  for (int j = 0; j < 16; ++j) {
    coeff_err = std::max(coeff_err, std::abs(solved.p.coeffs[j] - target.coeffs[j]));
  }
  const double tol = 1e-7 * std::max(1.0, 1.0 / solved.rcond);
  char d[160];
  std::snprintf(d, sizeof(d),
                "min sigma_min = %.3e, reproduction err = %.3e vs %.1e", min_sigma,
                coeff_err, tol);
  report(4, "unisolvence and reproduction", min_sigma > 0.0 && coeff_err <= tol, d);
}

// Criterion 5: q_N(eps) strictly decreasing in N for the four scalings, both
// parameter pairs, uniform mesh, N in {1000, 2000, 3000}; one inversion of at
// most 5% relative allowed per series.
void criterion_sv_decay() {
  const std::vector<int> n_list = {1000, 2000, 3000};
  const std::vector<double> eps_list = {1e-2, 5e-3, 1e-3};
  struct Scaling {
    const char* name;
    std::function<double(int)> factor;
  };
  const std::vector<Scaling> scalings = {
      {"H/N", [](int n) { return static_cast<double>(n); }},
      {"H/N^0.9", [](int n) { return std::pow(n, 0.9); }},
      {"H/N^0.8", [](int n) { return std::pow(n, 0.8); }},
      {"H/logN^4", [](int n) { return std::pow(std::log(static_cast<double>(n)), 4.0); }},
  };

  bool all_ok = true;
  std::string violation = "none";
  for (const auto& [a, b] : kFactorizationParams) {
    const JacobiParams p(a, b);
    std::vector<std::vector<double>> svals;
    for (int n : n_list) {
      svals.push_back(wjh::singular_values(
          wjh::build_h(p, Mesh::uniform(n), HistoBasis::shifted)));
    }
    for (const auto& scaling : scalings) {
      for (double eps : eps_list) {
        std::vector<double> qs;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
          qs.push_back(wjh::threshold_fraction(
              svals[i], eps * scaling.factor(n_list[i]), n_list[i]));
        }
        int inversions = 0;
        bool ok = true;
        for (std::size_t i = 1; i < qs.size(); ++i) {
          if (qs[i] < qs[i - 1]) continue;  // strict decay
          ++inversions;
          if (inversions > 1 || qs[i - 1] <= 0.0 || qs[i] > 1.05 * qs[i - 1]) {
            ok = false;
          }
        }
        if (!ok && all_ok) {
          char buf[128];
          std::snprintf(buf, sizeof(buf), "%s %s eps=%g: q = %.4f, %.4f, %.4f",
                        param_tag(a, b).c_str(), scaling.name, eps, qs[0], qs[1],
                        qs[2]);
          violation = buf;
        }
        all_ok = all_ok && ok;
      }
    }
  }
  report(5, "threshold-fraction decay under the four scalings", all_ok,
         all_ok ? "24 series decreasing over N=1000,2000,3000" : violation);
}

// Criterion 6: singular values of N T^(J) against the rearranged symbol.
void criterion_tj_symbol() {
  const int n = 2000;
  const JacobiParams p(2.0, 2.0);
  const Eigen::MatrixXd scaled = wjh::build_tj(p, n) * static_cast<double>(n);
  const auto sv = wjh::singular_values(scaled);
  const auto sym = wjh::sample_symbol_tj(p, 2000, 0.05, 0.95);
  const auto cmp = wjh::compare_rearrangements(sv, sym);
  char d[96];
  std::snprintf(d, sizeof(d), "mean rel dev = %.4f on [0.05,0.95], tol 0.05",
                cmp.mean_rel_dev);
  report(6, "symbol agreement for N T^(J)", cmp.mean_rel_dev <= 0.05, d);
}

// Criterion 7: Delta_N/N against its symbol for the exp and square maps
// (5%), and against both the symbol (1%) and the closed-form Toeplitz
// singular values for the identity map.
void criterion_delta_symbol() {
  const int n = 2000;
  bool ok = true;
  std::string detail;

  for (MeshMap map : {MeshMap::exp_map, MeshMap::square}) {
    const Eigen::MatrixXd scaled = wjh::build_delta(Mesh::graded(n, map)) / n;
    const auto sv = wjh::singular_values(scaled);
    const auto cmp = wjh::compare_rearrangements(sv, wjh::sample_symbol_delta(map, 2000));
    ok = ok && cmp.mean_rel_dev <= 0.05;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.4f ",
                  map == MeshMap::exp_map ? "exp" : "square", cmp.mean_rel_dev);
    detail += buf;
  }

  const Eigen::MatrixXd uniform_scaled = wjh::build_delta(Mesh::uniform(n)) / n;
  const auto sv = wjh::singular_values(uniform_scaled);
  const auto cmp =
      wjh::compare_rearrangements(sv, wjh::sample_symbol_delta(MeshMap::uniform, 2000));
  ok = ok && cmp.mean_rel_dev <= 0.01;

  // Toeplitz closed form: sigma_k(Delta_N/N) = sin(k pi / (2(N+1))) exactly
  double closed_form_dev = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double exact = std::sin(k * std::numbers::pi / (2.0 * (n + 1.0)));
    closed_form_dev = std::max(closed_form_dev, std::abs(sv[n - k] - exact));
  }
  ok = ok && closed_form_dev <= 1e-10;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "uniform=%.4f closed-form dev=%.2e",
                cmp.mean_rel_dev, closed_form_dev);
  detail += buf;
  report(7, "symbol agreement for Delta_N/N", ok, detail);
}

// Criterion 8: exact stability inequality, min eig(G - H^T D_h H) >= -1e-8.
void criterion_stability_gap() {
  double worst = std::numeric_limits<double>::infinity();
  for (auto [a, b] : std::vector<std::pair<double, double>>{{2.0, 2.0}, {0.6, 0.8}}) {
    for (MeshMap map : kMeshSweep) {
      for (int n : {16, 64, 128}) {
        worst = std::min(worst, wjh::min_eig_stability_gap(JacobiParams(a, b),
                                                           Mesh::graded(n, map)));
      }
    }
  }
  char d[96];
  std::snprintf(d, sizeof(d), "min eigenvalue of the gap = %.3e, tol -1e-8", worst);
  report(8, "stability inequality (PSD form)", worst >= -1e-8, d);
}

// Criterion 9: lambda_max(G_N)/(1 + log N) within 1.5x of its N = 16 value up
// to N = 2048.
void criterion_log_growth() {
  const JacobiParams p(2.0, 2.0);
  const double base = wjh::lambda_max_gram(p, 16) / (1.0 + std::log(16.0));
  double worst_ratio = 0.0;
  for (int n : {64, 256, 1024, 2048}) {
    const double ratio = wjh::lambda_max_gram(p, n) / (1.0 + std::log(n));
    worst_ratio = std::max(worst_ratio, ratio / base);
  }
  char d[96];
  std::snprintf(d, sizeof(d), "max ratio / ratio(16) = %.3f, cap 1.5", worst_ratio);
  report(9, "Gram log-growth bound", worst_ratio <= 1.5, d);
}

// Criterion 10: coefficient asymptotics j u_j -> sigma, j l_j -> sigma, and
// the norm ratio K_j (2j + sigma + 1) / 2^{sigma+1} -> 1.
void criterion_asymptotics() {
  bool ok = true;
  std::string detail;
  for (const auto& [a, b] : kFactorizationParams) {
    const JacobiParams p(a, b);
    const auto c = wjh::coupling_coeffs(p, 1000);
    const double du = std::abs(1000.0 * c.u - p.sigma());
    const double dl = std::abs(1000.0 * c.l - p.sigma());
    const double kr = wjh::jacobi_norm(p, 10000) * (2.0 * 10000 + p.sigma() + 1.0) /
                      std::pow(2.0, p.sigma() + 1.0);
    ok = ok && du <= 0.05 && dl <= 0.05 && std::abs(kr - 1.0) < 1e-3;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s: |ju-s|=%.3f |jl-s|=%.3f |K ratio-1|=%.1e ",
                  param_tag(a, b).c_str(), du, dl, std::abs(kr - 1.0));
    detail += buf;
  }
  report(10, "coefficient and norm asymptotics", ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criteria_factorization();
  criterion_lemmas();
  criterion_unisolvence();
  criterion_sv_decay();
  criterion_tj_symbol();
  criterion_delta_symbol();
  criterion_stability_gap();
  criterion_log_growth();
  criterion_asymptotics();
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d criterion(s) failed; %.1f s total\n", g_failures, wall);
  return g_failures == 0 ? 0 : 1;
}
