#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "wjh/matrix_io.hpp"

namespace fs = std::filesystem;

TEST_CASE("binary dump round-trips bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1e6, 1e6);
  Eigen::MatrixXd m(7, 3);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = unif(rng);
  }
  m(0, 0) = 0.1 + 0.2;  // not exactly representable in decimal

  const fs::path path = fs::temp_directory_path() / "wjh_io_roundtrip.bin";
  wjh::export_binary(m, path.string());
  const Eigen::MatrixXd back = wjh::load_binary(path.string());
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 3);
  CHECK((back - m).norm() == 0.0);
}

TEST_CASE("csv layout: one row per line, 17 significant digits") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.5, -2.0, 1.0 / 3.0;
  const fs::path path = fs::temp_directory_path() / "wjh_io_test.csv";
  wjh::export_csv(m, path.string());
  std::ifstream in(path);
  std::string line1, line2;
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(line1 == "1,0.5");
  CHECK(line2 == "-2,0.33333333333333331");
}

TEST_CASE("bad magic is rejected") {
  const fs::path path = fs::temp_directory_path() / "wjh_io_bad.bin";
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOTAMATRIXFILE";
  }
  CHECK_THROWS(wjh::load_binary(path.string()));
}
