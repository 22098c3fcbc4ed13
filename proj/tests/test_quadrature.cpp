#include <doctest.h>

#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "wjh/errors.hpp"
#include "wjh/jacobi.hpp"
#include "wjh/quadrature.hpp"

using wjh::JacobiParams;

TEST_CASE("gauss_legendre small rules match closed forms") {
  const auto& r1 = wjh::gauss_legendre(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const auto& r2 = wjh::gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0));
  CHECK(r2.weights[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(wjh::gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(wjh::gauss_legendre(10001), std::invalid_argument);
}

TEST_CASE("rule structure: symmetry, positivity, weight sum") {
  for (int n : {5, 16, 64, 257}) {
    const auto& rule = wjh::gauss_legendre(n);
    double sum = 0.0;
    for (int q = 0; q < n; ++q) {
      CHECK(rule.weights[q] > 0.0);
      if (q > 0) CHECK(rule.nodes[q] > rule.nodes[q - 1]);
      CHECK(rule.nodes[q] == doctest::Approx(-rule.nodes[n - 1 - q]).epsilon(1e-14));
      sum += rule.weights[q];
    }
    CHECK(std::abs(sum - 2.0) < 1e-13);
  }
}

TEST_CASE("degree 2n-1 exactness") {
  // n=16 on t^30: analytic antiderivative gives 2/31
  const auto& r16 = wjh::gauss_legendre(16);
  double v = 0.0;
  for (int q = 0; q < 16; ++q) v += r16.weights[q] * std::pow(r16.nodes[q], 30);
  CHECK(std::abs(v - 2.0 / 31.0) < 1e-13);

  // a dense-coefficient degree-129 polynomial on a 65-node rule
  const auto& r65 = wjh::gauss_legendre(65);
  auto poly = [](double t) {
    double acc = 0.0, pw = 1.0;
    for (int k = 0; k <= 129; ++k) {
      acc += (k % 3 == 0 ? 1.0 : -0.5) * pw;
      pw *= t;
    }
    return acc;
  };
  double got = 0.0;
  for (int q = 0; q < 65; ++q) got += r65.weights[q] * poly(r65.nodes[q]);
  double exact = 0.0;
  for (int k = 0; k <= 129; k += 2) exact += (k % 3 == 0 ? 1.0 : -0.5) * 2.0 / (k + 1);
  CHECK(got == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("integrate_cell basics") {
  CHECK(wjh::integrate_cell([](double) { return 1.0; }, 0.0, 0.5, 4) ==
        doctest::Approx(0.5));
  CHECK(std::abs(wjh::integrate_cell([](double t) { return t; }, -1.0, 1.0, 2)) <
        1e-15);
  const JacobiParams p22(2.0, 2.0);
  CHECK(wjh::integrate_cell([&](double t) { return wjh::weight(p22, t); }, -1.0, 1.0,
                            8) == doctest::Approx(oracle::beta_integral(2, 2)));
  CHECK_THROWS_AS(wjh::integrate_cell([](double) { return 0.0; }, 1.0, 0.0, 4),
                  std::invalid_argument);
}

TEST_CASE("integrate_weighted against Beta-integral oracles") {
  auto one = [](double) { return 1.0; };
  CHECK(wjh::integrate_weighted(one, JacobiParams(2, 2), -1, 1) ==
        doctest::Approx(oracle::beta_integral(2, 2)).epsilon(1e-13));
  CHECK(wjh::integrate_weighted(one, JacobiParams(0, 0), -1, 1) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(wjh::integrate_weighted(one, JacobiParams(4, 4), -1, 1) ==
        doctest::Approx(oracle::beta_integral(4, 4)).epsilon(1e-13));
  CHECK(wjh::integrate_weighted(one, JacobiParams(1.5, 1.5), -1, 1) ==
        doctest::Approx(oracle::beta_integral(1.5, 1.5)).epsilon(1e-12));
  // singular endpoints, non-integer exponents
  CHECK(wjh::integrate_weighted(one, JacobiParams(-0.4, -0.2), -1, 1) ==
        doctest::Approx(oracle::beta_integral(-0.4, -0.2)).epsilon(1e-12));
  CHECK(wjh::integrate_weighted(one, JacobiParams(-0.5, 0.6), -1, 1) ==
        doctest::Approx(oracle::beta_integral(-0.5, 0.6)).epsilon(1e-12));
}

TEST_CASE("integrate_weighted additivity and smooth factors") {
  const JacobiParams p(1.5, 1.0);
  auto f = [](double t) { return std::cos(3.0 * t) + t * t; };
  const double whole = wjh::integrate_weighted(f, p, -1.0, 1.0);
  const double split = wjh::integrate_weighted(f, p, -1.0, 0.3) +
                       wjh::integrate_weighted(f, p, 0.3, 1.0);
  CHECK(whole == doctest::Approx(split).epsilon(1e-11));
  const double simpson = oracle::integrate(
      [&](double t) { return f(t) * wjh::weight(p, t); }, -1.0, 1.0, 1e-13);
  CHECK(whole == doctest::Approx(simpson).epsilon(1e-10));
}

TEST_CASE("integrate_weighted rejects bad ranges") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(wjh::integrate_weighted(one, JacobiParams(0, 0), 0.5, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(wjh::integrate_weighted(one, JacobiParams(0, 0), -2.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(wjh::integrate_weighted(one, JacobiParams(0, 0), -1.0, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("halving the tolerance never increases the error estimate") {
  // refinement convergence on a wiggly integrand
  const JacobiParams p(0.5, 0.5);
  auto f = [](double t) { return std::sin(20.0 * t) * std::sin(20.0 * t); };
  double prev_est = std::numeric_limits<double>::infinity();
  double tightest = 0.0;
  for (double tol : {1e-6, 5e-7, 2.5e-7, 1e-8, 1e-10, 1e-12}) {
    double est = 0.0;
    tightest = wjh::integrate_weighted(f, p, -1.0, 1.0, tol, &est);
    CHECK(est <= tol);
    CHECK(est <= prev_est);
    prev_est = est;
  }
  const double simpson = oracle::integrate(
      [&](double t) { return f(t) * wjh::weight(p, t); }, -1.0, 1.0, 1e-13);
  CHECK(tightest == doctest::Approx(simpson).epsilon(1e-9));
}

TEST_CASE("rule cache is safe under concurrent access") {
  std::vector<std::thread> threads;
  std::vector<double> results(8, 0.0);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([t, &results] {
      const int order = 40 + (t % 4);  // contend on a few fresh orders
      const auto& rule = wjh::gauss_legendre(order);
      double sum = 0.0;
      for (int q = 0; q < rule.order; ++q) sum += rule.weights[q];
      results[t] = sum;
    });
  }
  for (auto& th : threads) th.join();
  for (double s : results) CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("panel plan grades only singular or non-smooth endpoints") {
  const auto smooth = wjh::detail::weighted_panel_plan(-1, 1, JacobiParams(2, 2), 8);
  CHECK(smooth.size() == 1);
  const auto graded =
      wjh::detail::weighted_panel_plan(-1, 1, JacobiParams(-0.4, 2.0), 8);
  CHECK(graded.size() > 4);
  bool has_power_hi = false;
  for (const auto& panel : graded) {
    if (panel.kind == wjh::detail::Panel::Kind::power_hi) has_power_hi = true;
    CHECK(panel.kind != wjh::detail::Panel::Kind::power_lo);
  }
  CHECK(has_power_hi);
  // interior cells never grade
  const auto interior =
      wjh::detail::weighted_panel_plan(-0.5, 0.25, JacobiParams(-0.4, -0.4), 8);
  CHECK(interior.size() == 1);
}
