#pragma once

#include <Eigen/Dense>

#include <string>

namespace wjh {

// Dense CSV, one row per line, values at 17 significant digits.
void export_csv(const Eigen::MatrixXd& m, const std::string& path);

// Compact binary dump: 8-byte magic "WJHMAT01", rows and cols as 64-bit
// little-endian integers, then row-major 64-bit floats.
void export_binary(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd load_binary(const std::string& path);

}  // namespace wjh
