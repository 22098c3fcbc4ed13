// Experiment runner for the weighted Jacobi histopolation library. Talks to
// the core exclusively through the shared-library C API (wjh/wjh.h); emits
// CSV tables plus a JSON sidecar per command.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wjh/wjh.h"

namespace {

using nlohmann::json;

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kLargeNCap = 4000;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(wjh_status st, const std::string& what) {
  if (st != WJH_OK) throw std::runtime_error(what + ": " + wjh_last_error());
}

struct MeshDeleter {
  void operator()(wjh_mesh* m) const { wjh_mesh_free(m); }
};
struct MatrixDeleter {
  void operator()(wjh_matrix* m) const { wjh_matrix_free(m); }
};
struct SymbolDeleter {
  void operator()(wjh_symbol* s) const { wjh_symbol_free(s); }
};
struct HistopolantDeleter {
  void operator()(wjh_histopolant* p) const { wjh_histopolant_free(p); }
};
using MeshPtr = std::unique_ptr<wjh_mesh, MeshDeleter>;
using MatrixPtr = std::unique_ptr<wjh_matrix, MatrixDeleter>;
using SymbolPtr = std::unique_ptr<wjh_symbol, SymbolDeleter>;
using HistopolantPtr = std::unique_ptr<wjh_histopolant, HistopolantDeleter>;

struct Config {
  double alpha = 2.0;
  double beta = 2.0;
  std::string mesh = "uniform";
  std::string mesh_file;
  std::vector<int> n_list = {1000, 2000, 3000};
  std::vector<double> eps_list = {1e-2, 5e-3, 1e-3};
  double gamma = 0.0;
  int grid_m = 2000;
  std::vector<double> trim = {0.05, 0.95};
  std::uint64_t seed = 20260810;
  std::string out_dir = ".";
  int workers = 1;
  bool allow_large_n = false;
  std::string target = "TJ";        // symbol-compare: TJ | Delta
  std::string function = "runge";   // reconstruct: one|exp|runge|cubic
  std::string samples_file;         // reconstruct: tabulated target
  int trials = 200;                 // stability
};

void load_config_file(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  in >> j;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("alpha", cfg.alpha);
  get("beta", cfg.beta);
  get("mesh", cfg.mesh);
  get("mesh_file", cfg.mesh_file);
  get("n_list", cfg.n_list);
  get("eps_list", cfg.eps_list);
  get("gamma", cfg.gamma);
  get("grid_m", cfg.grid_m);
  get("trim", cfg.trim);
  get("seed", cfg.seed);
  get("out", cfg.out_dir);
  get("workers", cfg.workers);
  get("allow_large_n", cfg.allow_large_n);
  get("target", cfg.target);
  get("function", cfg.function);
  get("samples_file", cfg.samples_file);
  get("trials", cfg.trials);
}

json config_json(const Config& cfg) {
  return json{{"alpha", cfg.alpha},
              {"beta", cfg.beta},
              {"mesh", cfg.mesh},
              {"mesh_file", cfg.mesh_file},
              {"n_list", cfg.n_list},
              {"eps_list", cfg.eps_list},
              {"gamma", cfg.gamma},
              {"grid_m", cfg.grid_m},
              {"trim", cfg.trim},
              {"seed", cfg.seed},
              {"out", cfg.out_dir},
              {"workers", cfg.workers},
              {"allow_large_n", cfg.allow_large_n},
              {"target", cfg.target},
              {"function", cfg.function},
              {"samples_file", cfg.samples_file},
              {"trials", cfg.trials}};
}

void validate_common(const Config& cfg) {
  if (cfg.n_list.empty()) throw ConfigError("n-list must not be empty");
  for (std::size_t i = 1; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] <= cfg.n_list[i - 1]) {
      throw ConfigError("n-list must be ascending");
    }
  }
  for (double e : cfg.eps_list) {
    if (!(e > 0.0)) throw ConfigError("eps-list entries must be positive");
  }
  if (cfg.trim.size() != 2 || !(0.0 <= cfg.trim[0] && cfg.trim[0] < cfg.trim[1] &&
                                cfg.trim[1] <= 1.0)) {
    throw ConfigError("trim must be lo hi with 0 <= lo < hi <= 1");
  }
  if (cfg.mesh != "uniform" && cfg.mesh != "exp" && cfg.mesh != "square" &&
      cfg.mesh != "file") {
    throw ConfigError("mesh must be one of uniform|exp|square|file");
  }
  if (cfg.mesh == "file" && cfg.mesh_file.empty()) {
    throw ConfigError("mesh=file requires --mesh-file");
  }
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
}

void require_large_n_opt_in(const Config& cfg) {
  for (int n : cfg.n_list) {
    if (n > kLargeNCap && !cfg.allow_large_n) {
      throw ConfigError("N > 4000 needs --allow-large-n (dense SVD is O(N^3))");
    }
  }
}

MeshPtr make_mesh(const Config& cfg, int n) {
  wjh_mesh* m = nullptr;
  if (cfg.mesh == "file") {
    check(wjh_mesh_from_file(cfg.mesh_file.c_str(), &m), "mesh from file");
  } else {
    wjh_mesh_map map = WJH_MAP_UNIFORM;
    if (cfg.mesh == "exp") map = WJH_MAP_EXP;
    if (cfg.mesh == "square") map = WJH_MAP_SQUARE;
    check(wjh_mesh_graded(n, map, &m), "mesh construction");
  }
  return MeshPtr(m);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header)
      : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << header << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_sidecar(const Config& cfg, const std::string& command,
                   double wall_seconds, const json& extra) {
  json j{{"command", command},
         {"config", config_json(cfg)},
         {"library_version", wjh_version()},
         {"wall_time_s", wall_seconds}};
  if (!extra.is_null()) j["results"] = extra;
  const std::filesystem::path path =
      std::filesystem::path(cfg.out_dir) / (command + ".json");
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

std::vector<double> matrix_singular_values(const wjh_matrix* m) {
  const int d = std::min(wjh_matrix_rows(m), wjh_matrix_cols(m));
  std::vector<double> sv(d);
  check(wjh_singular_values(m, sv.data()), "singular values");
  return sv;
}

// Runs fn(i) for i in [0, count) on a bounded pool; rethrows the first error.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  std::vector<std::string> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      while (!failed.load()) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (const std::exception& e) {
          errors[w] = e.what();
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
}

/* ---- identities ---- */

int cmd_identities(const Config& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.beta > 0.0)) {
    throw ConfigError("identities requires alpha, beta > 0");
  }
  validate_common(cfg);
  const auto start = std::chrono::steady_clock::now();
  constexpr double kTolR1 = 1e-9, kTolR2 = 1e-8, kTolLemma = 1e-8;

  CsvWriter csv(std::filesystem::path(cfg.out_dir) / "identities.csv",
                "N,r1,r2,lemma24_max,lemma25_max");
  double l24 = 0.0, l25 = 0.0;
  check(wjh_lemma_identities(cfg.alpha, cfg.beta, 30, 51, &l24, &l25),
        "lemma identities");
  bool ok = l24 <= kTolLemma && l25 <= kTolLemma;
  json rows = json::array();
  for (int n : cfg.n_list) {
    MeshPtr mesh = make_mesh(cfg, n);
    double r1 = 0.0, r2 = 0.0;
    check(wjh_verify_factorization(cfg.alpha, cfg.beta, mesh.get(), &r1, &r2),
          "factorization");
    ok = ok && r1 <= kTolR1 && r2 <= kTolR2;
    csv.row({std::to_string(n), fmt(r1), fmt(r2), fmt(l24), fmt(l25)});
    rows.push_back({{"N", n}, {"r1", r1}, {"r2", r2}});
    std::cout << "N=" << n << " r1=" << r1 << " r2=" << r2 << " lemma24=" << l24
              << " lemma25=" << l25 << '\n';
  }
  csv.close();
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_sidecar(cfg, "identities", wall,
                json{{"rows", rows},
                     {"lemma24_max", l24},
                     {"lemma25_max", l25},
                     {"tolerances", {{"r1", kTolR1}, {"r2", kTolR2}, {"lemma", kTolLemma}}},
                     {"pass", ok}});
  std::cout << (ok ? "identities: PASS" : "identities: FAIL") << '\n';
  return ok ? 0 : kExitViolation;
}

/* ---- sv-decay ---- */

struct ScalingDef {
  const char* name;
  wjh_scaling_kind kind;
  double gamma;
};

// The four scaled families; all are scalar multiples of H_N, so one SVD per N
// serves every scaling (thresholds get rescaled instead of the matrix).
constexpr ScalingDef kSvScalings[] = {
    {"div_n_pow", WJH_SCALE_DIVIDE_N_POW, 1.0},
    {"div_n_pow", WJH_SCALE_DIVIDE_N_POW, 0.9},
    {"div_n_pow", WJH_SCALE_DIVIDE_N_POW, 0.8},
    {"div_logn_pow", WJH_SCALE_DIVIDE_LOGN_POW, 4.0},
};

double scalar_scaling_factor(const ScalingDef& def, int n) {
  return def.kind == WJH_SCALE_DIVIDE_N_POW
             ? std::pow(static_cast<double>(n), def.gamma)
             : std::pow(std::log(static_cast<double>(n)), def.gamma);
}

int cmd_sv_decay(const Config& cfg) {
  validate_common(cfg);
  require_large_n_opt_in(cfg);
  const auto start = std::chrono::steady_clock::now();

  const int count = static_cast<int>(cfg.n_list.size());
  std::vector<std::vector<double>> svals(count);
  parallel_for(count, cfg.workers, [&](int i) {
    const int n = cfg.n_list[i];
    MeshPtr mesh = make_mesh(cfg, n);
    wjh_matrix* h = nullptr;
    check(wjh_build_h(cfg.alpha, cfg.beta, mesh.get(), WJH_BASIS_SHIFTED, &h),
          "build H");
    MatrixPtr hp(h);
    svals[i] = matrix_singular_values(h);
  });

  CsvWriter csv(std::filesystem::path(cfg.out_dir) / "sv_decay.csv",
                "N,scaling,gamma,eps,q");
  std::map<std::pair<int, double>, std::vector<double>> q_series;  // (scaling idx, eps)
  for (int i = 0; i < count; ++i) {
    const int n = cfg.n_list[i];
    for (int s = 0; s < 4; ++s) {
      const double factor = scalar_scaling_factor(kSvScalings[s], n);
      for (double eps : cfg.eps_list) {
        double q = 0.0;
        check(wjh_threshold_fraction(svals[i].data(),
                                     static_cast<int>(svals[i].size()),
                                     eps * factor, n, &q),
              "threshold fraction");
        csv.row({std::to_string(n), kSvScalings[s].name, fmt(kSvScalings[s].gamma),
                 fmt(eps), fmt(q)});
        q_series[{s, eps}].push_back(q);
      }
    }
  }
  csv.close();

  json decay = json::array();
  bool all_decay = true;
  for (const auto& [key, qs] : q_series) {
    std::string flag = "not-applicable";
    if (qs.size() >= 2) {
      int inversions = 0;
      bool ok = true;
      for (std::size_t i = 1; i < qs.size(); ++i) {
        if (qs[i] >= qs[i - 1] && qs[i - 1] > 0.0) {
          ++inversions;
          if (inversions > 1 || qs[i] > 1.05 * qs[i - 1]) ok = false;
        } else if (qs[i] > qs[i - 1]) {
          ok = false;  // growth from zero
        }
      }
      flag = ok ? "decreasing" : "violated";
      all_decay = all_decay && ok;
    }
    decay.push_back({{"scaling", kSvScalings[key.first].name},
                     {"gamma", kSvScalings[key.first].gamma},
                     {"eps", key.second},
                     {"flag", flag}});
  }
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_sidecar(cfg, "sv_decay", wall, json{{"decay_flags", decay}});
  std::cout << "sv-decay: wrote sv_decay.csv ("
            << (all_decay ? "q decreasing" : "decay violated or n/a") << ")\n";
  return 0;
}

/* ---- symbol-compare ---- */

int cmd_symbol_compare(const Config& cfg) {
  validate_common(cfg);
  if (cfg.target != "TJ" && cfg.target != "Delta") {
    throw ConfigError("symbol-compare target must be TJ or Delta");
  }
  if (cfg.target == "TJ" && !(cfg.alpha > 0.0 && cfg.beta > 0.0)) {
    throw ConfigError("TJ symbol requires alpha, beta > 0");
  }
  require_large_n_opt_in(cfg);
  const auto start = std::chrono::steady_clock::now();
  const int n = cfg.n_list.back();

  std::vector<double> sv;
  SymbolPtr symbol;
  if (cfg.target == "TJ") {
    wjh_matrix* tj = nullptr;
    check(wjh_build_tj(cfg.alpha, cfg.beta, n, &tj), "build TJ");
    MatrixPtr tjp(tj);
    wjh_matrix* scaled = nullptr;  // N * T^(J) = T / N^{-1}
    check(wjh_apply_scaling(tj, WJH_SCALE_DIVIDE_N_POW, -1.0, nullptr, n, &scaled),
          "scale TJ");
    MatrixPtr sp(scaled);
    sv = matrix_singular_values(scaled);
    wjh_symbol* sym = nullptr;
    check(wjh_symbol_tj(cfg.alpha, cfg.beta, cfg.grid_m, cfg.trim[0], cfg.trim[1], &sym),
          "TJ symbol");
    symbol.reset(sym);
  } else {
    MeshPtr mesh = make_mesh(cfg, n);
    wjh_matrix* delta = nullptr;
    check(wjh_build_delta(mesh.get(), &delta), "build Delta");
    MatrixPtr dp(delta);
    wjh_matrix* scaled = nullptr;
    check(wjh_apply_scaling(delta, WJH_SCALE_DIVIDE_N_POW, 1.0, nullptr, n, &scaled),
          "scale Delta");
    MatrixPtr sp(scaled);
    sv = matrix_singular_values(scaled);
    wjh_symbol* sym = nullptr;
    if (cfg.mesh == "uniform") {
      check(wjh_symbol_delta(WJH_MAP_UNIFORM, cfg.grid_m, cfg.trim[0], cfg.trim[1], &sym),
            "Delta symbol");
    } else if (cfg.mesh == "exp") {
      check(wjh_symbol_delta(WJH_MAP_EXP, cfg.grid_m, cfg.trim[0], cfg.trim[1], &sym),
            "Delta symbol");
    } else if (cfg.mesh == "square") {
      check(wjh_symbol_delta(WJH_MAP_SQUARE, cfg.grid_m, cfg.trim[0], cfg.trim[1], &sym),
            "Delta symbol");
    } else {
      check(wjh_symbol_delta_from_mesh(mesh.get(), cfg.grid_m, cfg.trim[0],
                                       cfg.trim[1], &sym),
            "Delta symbol");
    }
    symbol.reset(sym);
  }

  CsvWriter csv(std::filesystem::path(cfg.out_dir) / "symbol_compare.csv",
                "quantile,sigma_value,symbol_value");
  const int d = static_cast<int>(sv.size());
  for (int j = 0; j < d; ++j) {
    const double u = (j + 0.5) / d;
    double ref = 0.0;
    check(wjh_symbol_quantile(symbol.get(), u, &ref), "symbol quantile");
    csv.row({fmt(u), fmt(sv[j]), fmt(ref)});
  }
  csv.close();

  double max_dev = 0.0, mean_dev = 0.0;
  check(wjh_compare_rearrangements(sv.data(), d, symbol.get(), &max_dev, &mean_dev),
        "compare rearrangements");
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_sidecar(cfg, "symbol_compare", wall,
                json{{"target", cfg.target},
                     {"N", n},
                     {"max_rel_dev", max_dev},
                     {"mean_rel_dev", mean_dev}});
  std::cout << "symbol-compare " << cfg.target << " N=" << n
            << ": mean_rel_dev=" << mean_dev << " max_rel_dev=" << max_dev << '\n';
  return 0;
}

/* ---- stability ---- */

int cmd_stability(const Config& cfg) {
  if (!(cfg.alpha > -0.5 && cfg.beta > -0.5)) {
    throw ConfigError("stability requires alpha, beta > -1/2");
  }
  validate_common(cfg);
  const auto start = std::chrono::steady_clock::now();
  constexpr double kMarginTol = -1e-8;

  CsvWriter csv(std::filesystem::path(cfg.out_dir) / "stability.csv",
                "N,alpha,beta,lambda_max,ratio,op_norm,min_margin");
  bool ok = true;
  double ratio_first = 0.0;
  json rows = json::array();
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    const int n = cfg.n_list[i];
    MeshPtr mesh = make_mesh(cfg, n);
    wjh_stability_report rep{};
    check(wjh_verify_stability(cfg.alpha, cfg.beta, mesh.get(), cfg.trials, cfg.seed,
                               &rep),
          "verify stability");
    if (i == 0) ratio_first = rep.log_bound_ratio;
    ok = ok && rep.inequality_margin >= kMarginTol &&
         rep.op_norm_2_to_h <= std::sqrt(rep.lambda_max_gram) + 1e-8 &&
         rep.log_bound_ratio <= 1.5 * ratio_first + 1e-12;
    csv.row({std::to_string(n), fmt(cfg.alpha), fmt(cfg.beta), fmt(rep.lambda_max_gram),
             fmt(rep.log_bound_ratio), fmt(rep.op_norm_2_to_h),
             fmt(rep.inequality_margin)});
    rows.push_back({{"N", n},
                    {"lambda_max", rep.lambda_max_gram},
                    {"ratio", rep.log_bound_ratio},
                    {"op_norm", rep.op_norm_2_to_h},
                    {"min_margin", rep.inequality_margin}});
    std::cout << "N=" << n << " lambda_max=" << rep.lambda_max_gram
              << " ratio=" << rep.log_bound_ratio << " op_norm=" << rep.op_norm_2_to_h
              << " min_margin=" << rep.inequality_margin << '\n';
  }
  csv.close();
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_sidecar(cfg, "stability", wall,
                json{{"rows", rows}, {"seed", cfg.seed}, {"pass", ok}});
  std::cout << (ok ? "stability: PASS" : "stability: FAIL") << '\n';
  return ok ? 0 : kExitViolation;
}

/* ---- reconstruct ---- */

struct SampledFunction {
  std::vector<double> xs, ys;
  double operator()(double t) const {
    if (xs.empty()) throw std::runtime_error("empty sample table");
    if (t <= xs.front()) return ys.front();
    if (t >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double w = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
  }
};

double named_function(const std::string& name, double t) {
  if (name == "one") return 1.0;
  if (name == "exp") return std::exp(t);
  if (name == "runge") return 1.0 / (1.0 + 25.0 * t * t);
  if (name == "cubic") return t * t * t + 1.0;
  throw ConfigError("unknown function " + name);
}

int cmd_reconstruct(const Config& cfg) {
  validate_common(cfg);
  const auto start = std::chrono::steady_clock::now();
  const int n = cfg.n_list.front();
  MeshPtr mesh = make_mesh(cfg, n);
  const int cells = wjh_mesh_cells(mesh.get());

  SampledFunction table;
  std::function<double(double)> f;
  if (!cfg.samples_file.empty()) {
    std::ifstream in(cfg.samples_file);
    if (!in) throw ConfigError("cannot open samples file " + cfg.samples_file);
    double x, y;
    while (in >> x >> y) {
      table.xs.push_back(x);
      table.ys.push_back(y);
    }
    if (table.xs.size() < 2 || !std::is_sorted(table.xs.begin(), table.xs.end())) {
      throw ConfigError("samples file needs >= 2 ascending x values");
    }
    f = [&table](double t) { return table(t); };
  } else {
    named_function(cfg.function, 0.0);  // validates the name up front
    f = [&cfg](double t) { return named_function(cfg.function, t); };
  }

  struct Ctx {
    std::function<double(double)>* fn;
  } ctx{&f};
  wjh_fn c_fn = [](double t, void* p) {
    return (*static_cast<Ctx*>(p)->fn)(t);
  };

  std::vector<double> b(cells);
  check(wjh_cell_averages(c_fn, &ctx, cfg.alpha, cfg.beta, mesh.get(), b.data()),
        "cell averages");
  wjh_histopolant* p = nullptr;
  double solve_residual = 0.0;
  check(wjh_solve_histopolation(cfg.alpha, cfg.beta, mesh.get(), WJH_BASIS_SHIFTED,
                                b.data(), &p, &solve_residual),
        "histopolation solve");
  HistopolantPtr pp(p);
  double max_cell_residual = 0.0;
  check(wjh_verify_averages(p, mesh.get(), b.data(), &max_cell_residual),
        "verify averages");

  CsvWriter csv(std::filesystem::path(cfg.out_dir) / "reconstruct.csv", "x,f,p");
  constexpr int kPoints = 401;
  for (int i = 0; i < kPoints; ++i) {
    const double x = -1.0 + 2.0 * i / (kPoints - 1.0);
    double px = 0.0;
    check(wjh_histopolant_eval(p, x, &px), "histopolant eval");
    csv.row({fmt(x), fmt(f(x)), fmt(px)});
  }
  csv.close();
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_sidecar(cfg, "reconstruct", wall,
                json{{"N", cells},
                     {"solve_residual", solve_residual},
                     {"max_cell_residual", max_cell_residual}});
  std::cout << "reconstruct N=" << cells << " solve_residual=" << solve_residual
            << " max_cell_residual=" << max_cell_residual << '\n';
  return 0;
}

/* ---- probe-unscaled ---- */

int cmd_probe_unscaled(const Config& cfg) {
  validate_common(cfg);
  require_large_n_opt_in(cfg);
  const auto start = std::chrono::steady_clock::now();

  const int count = static_cast<int>(cfg.n_list.size());
  std::vector<std::vector<double>> svals(count);
  parallel_for(count, cfg.workers, [&](int i) {
    MeshPtr mesh = make_mesh(cfg, cfg.n_list[i]);
    wjh_matrix* h = nullptr;
    check(wjh_build_h(cfg.alpha, cfg.beta, mesh.get(), WJH_BASIS_SHIFTED, &h),
          "build H");
    MatrixPtr hp(h);
    svals[i] = matrix_singular_values(h);
  });

  CsvWriter csv(std::filesystem::path(cfg.out_dir) / "probe_unscaled.csv",
                "N,index_ratio,sigma");
  for (int i = 0; i < count; ++i) {
    const int n = cfg.n_list[i];
    for (std::size_t j = 0; j < svals[i].size(); ++j) {
      csv.row({std::to_string(n), fmt((j + 1.0) / n), fmt(svals[i][j])});
    }
  }
  csv.close();
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_sidecar(cfg, "probe_unscaled", wall, json());
  std::cout << "probe-unscaled: wrote probe_unscaled.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  // --config seeds the defaults; explicit flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], cfg);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
      }
    }
  }

  CLI::App app{"Weighted Jacobi histopolation experiments"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");

  auto add_common = [&cfg, &config_path](CLI::App* cmd) {
    cmd->add_option("--alpha", cfg.alpha, "Jacobi exponent alpha (> -1)");
    cmd->add_option("--beta", cfg.beta, "Jacobi exponent beta (> -1)");
    cmd->add_option("--mesh", cfg.mesh, "uniform|exp|square|file");
    cmd->add_option("--mesh-file", cfg.mesh_file, "custom mesh file (one node per line)");
    cmd->add_option("--n-list", cfg.n_list, "ascending list of N values")
        ->delimiter(',');
    cmd->add_option("--eps-list", cfg.eps_list, "threshold list")->delimiter(',');
    cmd->add_option("--gamma", cfg.gamma, "scaling exponent");
    cmd->add_option("--grid-m", cfg.grid_m, "symbol grid resolution per axis");
    cmd->add_option("--trim", cfg.trim, "quantile window lo hi")
        ->expected(2)
        ->delimiter(',');
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--workers", cfg.workers, "bounded worker pool size");
    cmd->add_flag("--allow-large-n", cfg.allow_large_n, "permit N > 4000");
    cmd->add_option("--config", config_path, "JSON config file")->take_last();
  };

  CLI::App* identities = app.add_subcommand("identities", "factorization and lemma residuals");
  add_common(identities);
  CLI::App* sv_decay = app.add_subcommand("sv-decay", "threshold-fraction decay under the four scalings");
  add_common(sv_decay);
  CLI::App* symbol_compare = app.add_subcommand("symbol-compare", "singular values vs symbol rearrangement");
  add_common(symbol_compare);
  symbol_compare->add_option("--target", cfg.target, "TJ|Delta");
  CLI::App* stability = app.add_subcommand("stability", "Gram log-growth and inequality margins");
  add_common(stability);
  stability->add_option("--trials", cfg.trials, "randomized trials");
  CLI::App* reconstruct = app.add_subcommand("reconstruct", "histopolate a target function");
  add_common(reconstruct);
  reconstruct->add_option("--function", cfg.function, "one|exp|runge|cubic");
  reconstruct->add_option("--samples-file", cfg.samples_file, "tabulated target (x y per line)");
  CLI::App* probe = app.add_subcommand("probe-unscaled", "unscaled singular value chart");
  add_common(probe);

  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(cfg.out_dir);
    if (app.got_subcommand(identities)) return cmd_identities(cfg);
    if (app.got_subcommand(sv_decay)) return cmd_sv_decay(cfg);
    if (app.got_subcommand(symbol_compare)) return cmd_symbol_compare(cfg);
    if (app.got_subcommand(stability)) return cmd_stability(cfg);
    if (app.got_subcommand(reconstruct)) return cmd_reconstruct(cfg);
    if (app.got_subcommand(probe)) return cmd_probe_unscaled(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
