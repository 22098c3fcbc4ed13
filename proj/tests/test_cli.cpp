// End-to-end checks of the CLI binary (path supplied via WJH_CLI_BIN).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("WJH_CLI_BIN");
  REQUIRE(env != nullptr);
  return env;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "wjh_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("identities passes in regime and writes its artifacts") {
  const fs::path dir = fresh_dir("identities");
  CHECK(run("identities --alpha 2 --beta 2 --mesh uniform --n-list 16,32 --out " +
            dir.string()) == 0);
  const std::string csv = slurp(dir / "identities.csv");
  CHECK(csv.rfind("N,r1,r2,lemma24_max,lemma25_max", 0) == 0);
  CHECK(csv.find("\n16,") != std::string::npos);
  CHECK(fs::exists(dir / "identities.json"));
}

TEST_CASE("identities rejects out-of-regime parameters before computing") {
  const fs::path dir = fresh_dir("identities_bad");
  CHECK(run("identities --alpha -0.4 --beta 2 --out " + dir.string()) == 2);
  CHECK_FALSE(fs::exists(dir / "identities.csv"));
}

TEST_CASE("bad flags and missing subcommand fail cleanly") {
  CHECK(run("") != 0);
  CHECK(run("identities --mesh nosuchmesh") == 2);
  CHECK(run("identities --mesh file") == 2);  // no --mesh-file given
  CHECK(run("sv-decay --n-list 10,8,30") == 2);
}

TEST_CASE("sv-decay output is byte-identical across runs") {
  const fs::path a = fresh_dir("decay_a");
  const fs::path b = fresh_dir("decay_b");
  const std::string common =
      " --alpha 2 --beta 2 --n-list 24,32 --eps-list 1e-2,1e-3 --out ";
  CHECK(run("sv-decay" + common + a.string()) == 0);
  CHECK(run("sv-decay" + common + b.string()) == 0);
  CHECK(slurp(a / "sv_decay.csv") == slurp(b / "sv_decay.csv"));
  CHECK(slurp(a / "sv_decay.csv").rfind("N,scaling,gamma,eps,q", 0) == 0);
}

TEST_CASE("sv-decay honours the worker pool flag deterministically") {
  const fs::path a = fresh_dir("decay_w1");
  const fs::path b = fresh_dir("decay_w2");
  const std::string common = " --alpha 1.5 --beta 1 --n-list 16,24,32 --out ";
  CHECK(run("sv-decay" + common + a.string() + " --workers 1") == 0);
  CHECK(run("sv-decay" + common + b.string() + " --workers 2") == 0);
  CHECK(slurp(a / "sv_decay.csv") == slurp(b / "sv_decay.csv"));
}

TEST_CASE("large N needs the explicit override") {
  const fs::path dir = fresh_dir("large_n");
  CHECK(run("sv-decay --n-list 1000,5000 --out " + dir.string()) == 2);
}

TEST_CASE("symbol-compare runs for both targets") {
  const fs::path dir = fresh_dir("symbol");
  CHECK(run("symbol-compare --target TJ --alpha 2 --beta 2 --n-list 64 --grid-m 64 "
            "--out " +
            dir.string()) == 0);
  const std::string csv = slurp(dir / "symbol_compare.csv");
  CHECK(csv.rfind("quantile,sigma_value,symbol_value", 0) == 0);
  CHECK(run("symbol-compare --target Delta --mesh exp --n-list 64 --grid-m 64 "
            "--out " +
            dir.string()) == 0);
  CHECK(run("symbol-compare --target bogus --out " + dir.string()) == 2);
}

TEST_CASE("stability writes the report and passes in regime") {
  const fs::path dir = fresh_dir("stability");
  CHECK(run("stability --alpha 2 --beta 2 --n-list 16,32 --trials 50 --out " +
            dir.string()) == 0);
  const std::string csv = slurp(dir / "stability.csv");
  CHECK(csv.rfind("N,alpha,beta,lambda_max,ratio,op_norm,min_margin", 0) == 0);
  CHECK(run("stability --alpha -0.6 --beta 0 --out " + dir.string()) == 2);
}

TEST_CASE("reconstruct emits the sampled table for named targets") {
  const fs::path dir = fresh_dir("reconstruct");
  CHECK(run("reconstruct --function cubic --alpha 2 --beta 2 --n-list 8 --out " +
            dir.string()) == 0);
  const std::string csv = slurp(dir / "reconstruct.csv");
  CHECK(csv.rfind("x,f,p", 0) == 0);
  // 401 sample rows plus the header
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 402);
  CHECK(run("reconstruct --function nosuch --out " + dir.string()) == 2);
}

TEST_CASE("reconstruct accepts tabulated samples") {
  const fs::path dir = fresh_dir("reconstruct_table");
  const fs::path table = dir / "samples.txt";
  {
    std::ofstream out(table);
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 2.0 * i / 100.0;
      out << x << ' ' << x * x << '\n';
    }
  }
  CHECK(run("reconstruct --samples-file " + table.string() +
            " --alpha 2 --beta 2 --n-list 8 --out " + dir.string()) == 0);
}

TEST_CASE("probe-unscaled emits one row per singular value") {
  const fs::path dir = fresh_dir("probe");
  CHECK(run("probe-unscaled --n-list 16,24 --mesh square --out " + dir.string()) == 0);
  const std::string csv = slurp(dir / "probe_unscaled.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 16 + 24);
}

TEST_CASE("config file seeds values and flags override them") {
  const fs::path dir = fresh_dir("config");
  const fs::path cfg = dir / "cfg.json";
  {
    std::ofstream out(cfg);
    out << R"({"alpha": 2.0, "beta": 2.0, "n_list": [16], "out": ")"
        << dir.string() << R"("})";
  }
  CHECK(run("identities --config " + cfg.string()) == 0);
  CHECK(fs::exists(dir / "identities.csv"));
  // flag overrides the config's alpha with an invalid one -> config error
  CHECK(run("identities --config " + cfg.string() + " --alpha -0.5") == 2);
  CHECK(run("identities --config /nonexistent.json") == 2);
}
