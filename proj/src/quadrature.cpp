#include "wjh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "wjh/errors.hpp"

namespace wjh {

namespace {

constexpr int kMaxRuleOrder = 10000;
constexpr double kGradingRatio = 0.25;
constexpr int kGradingLevels = 40;
constexpr int kMinPanelOrder = 16;
constexpr int kMaxPanelOrder = 9000;
constexpr int kPowerPanelOrder = 24;

bool grading_needed(double exponent) {
  if (exponent < 0.0) return true;
  return std::abs(exponent - std::round(exponent)) > 1e-12;
}

bool is_poly_exponent(double exponent) {
  return exponent >= 0.0 && std::abs(exponent - std::round(exponent)) <= 1e-12;
}

double arc(double t) { return std::acos(std::clamp(t, -1.0, 1.0)); }

// Nodes needed to resolve a degree-d polynomial over [lo,hi]: about one node
// per half oscillation, measured in acos coordinates.
int oscillation_order(int max_degree, double lo, double hi) {
  const double dphi = arc(lo) - arc(hi);
  const int n = static_cast<int>(std::ceil(0.5 * max_degree * dphi)) + 12;
  return std::clamp(n, kMinPanelOrder, kMaxPanelOrder);
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxRuleOrder) {
    throw std::invalid_argument("gauss_legendre: order must be in [1, 10000]");
  }
  static std::mutex cache_mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }

  auto rule = std::make_unique<QuadratureRule>();
  rule->order = n;
  rule->nodes.resize(n);
  rule->weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      // Legendre value and derivative at z by the standard recurrence.
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw DecompositionError("gauss_legendre: Newton iteration failed");
    }
    if (n - i == i - 1) z = 0.0;  // middle node of an odd rule
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule->nodes[i - 1] = -z;
    rule->nodes[n - i] = z;
    rule->weights[i - 1] = w;
    rule->weights[n - i] = w;
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(n, std::move(rule));
  return *it->second;
}

double integrate_cell(const std::function<double(double)>& f, double a, double b,
                      int order) {
  if (!(a < b)) throw std::invalid_argument("integrate_cell: requires a < b");
  const QuadratureRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int q = 0; q < rule.order; ++q) {
    sum += rule.weights[q] * f(mid + half * rule.nodes[q]);
  }
  return half * sum;
}

namespace detail {

namespace {

// Plain panels stop at this distance from the endpoint; closer than that the
// cancellation in 1 -+ t corrupts the weight factor, and the sliver panel's
// power substitution evaluates the singular mass without forming 1 -+ t.
constexpr double kSliverDistance = 1e-5;

// Appends plain panels graded geometrically toward `end` (which is lo when
// toward_lo), with a power-substituted sliver panel touching the endpoint.
void append_graded(std::vector<Panel>& panels, double lo, double hi,
                   bool toward_lo, double exponent, int max_degree) {
  const double width = hi - lo;
  std::vector<double> offsets;  // distances from the endpoint, descending
  double off = width;
  while (off > kSliverDistance && static_cast<int>(offsets.size()) < kGradingLevels) {
    off *= kGradingRatio;
    offsets.push_back(off);
  }
  const double sliver_width = offsets.empty() ? width : offsets.back();
  Panel sliver;
  sliver.lo = toward_lo ? lo : hi - sliver_width;
  sliver.hi = toward_lo ? lo + sliver_width : hi;
  sliver.order = std::max(kPowerPanelOrder,
                          oscillation_order(max_degree, sliver.lo, sliver.hi));
  sliver.kind = toward_lo ? Panel::Kind::power_lo : Panel::Kind::power_hi;
  sliver.exponent = exponent;
  panels.push_back(sliver);
  for (int k = static_cast<int>(offsets.size()) - 1; k >= 0; --k) {
    const double near = offsets[k];
    const double far = k == 0 ? width : offsets[k - 1];
    Panel p;
    p.lo = toward_lo ? lo + near : hi - far;
    p.hi = toward_lo ? lo + far : hi - near;
    p.order = oscillation_order(max_degree, p.lo, p.hi);
    p.kind = Panel::Kind::plain;
    p.exponent = 0.0;
    panels.push_back(p);
  }
}

}  // namespace

std::vector<Panel> weighted_panel_plan(double a, double b,
                                       const JacobiParams& weight_params,
                                       int max_degree) {
  const double alpha = weight_params.alpha();
  const double beta = weight_params.beta();
  const bool grade_lo = (a <= -1.0 + 1e-13) && grading_needed(beta);
  const bool grade_hi = (b >= 1.0 - 1e-13) && grading_needed(alpha);

  std::vector<Panel> panels;
  if (!grade_lo && !grade_hi) {
    Panel p;
    p.lo = a;
    p.hi = b;
    p.kind = Panel::Kind::plain;
    p.exponent = 0.0;
    p.order = oscillation_order(max_degree, a, b);
    if (is_poly_exponent(alpha) && is_poly_exponent(beta)) {
      const int wdeg = static_cast<int>(std::round(alpha + beta));
      const int exact = static_cast<int>(std::ceil(0.5 * (max_degree + wdeg + 1))) + 1;
      p.order = std::min(p.order, std::max(exact, 2));
    }
    panels.push_back(p);
    return panels;
  }
  if (grade_lo && grade_hi) {
    const double mid = (a < 0.0 && b > 0.0) ? 0.0 : 0.5 * (a + b);
    append_graded(panels, a, mid, true, beta, max_degree);
    append_graded(panels, mid, b, false, alpha, max_degree);
  } else if (grade_lo) {
    append_graded(panels, a, b, true, beta, max_degree);
  } else {
    append_graded(panels, a, b, false, alpha, max_degree);
  }
  return panels;
}

}  // namespace detail

namespace detail {

// Power panels substitute v = delta * u^{1/(1+e)} so the endpoint singularity
// integrates exactly against a smooth remainder.
void panel_weighted_nodes(const Panel& panel, const JacobiParams& weight_params,
                          int order, std::vector<double>& ts,
                          std::vector<double>& ws) {
  const QuadratureRule& rule = gauss_legendre(order);
  const double alpha = weight_params.alpha();
  const double beta = weight_params.beta();
  ts.resize(rule.order);
  ws.resize(rule.order);
  switch (panel.kind) {
    case Panel::Kind::plain: {
      const double mid = 0.5 * (panel.lo + panel.hi);
      const double half = 0.5 * (panel.hi - panel.lo);
      for (int q = 0; q < rule.order; ++q) {
        const double t = mid + half * rule.nodes[q];
        ts[q] = t;
        ws[q] = half * rule.weights[q] * std::pow(1.0 - t, alpha) *
                std::pow(1.0 + t, beta);
      }
      break;
    }
    case Panel::Kind::power_lo: {
      const double delta = panel.hi - panel.lo;
      const double e = panel.exponent;
      const double inv = 1.0 / (1.0 + e);
      const double scale = std::pow(delta, 1.0 + e) * inv;
      for (int q = 0; q < rule.order; ++q) {
        const double u = 0.5 * (1.0 + rule.nodes[q]);  // (0,1)
        const double t = -1.0 + delta * std::pow(u, inv);
        ts[q] = t;
        ws[q] = scale * 0.5 * rule.weights[q] * std::pow(1.0 - t, alpha);
      }
      break;
    }
    case Panel::Kind::power_hi: {
      const double delta = panel.hi - panel.lo;
      const double e = panel.exponent;
      const double inv = 1.0 / (1.0 + e);
      const double scale = std::pow(delta, 1.0 + e) * inv;
      for (int q = 0; q < rule.order; ++q) {
        const double u = 0.5 * (1.0 + rule.nodes[q]);
        const double t = 1.0 - delta * std::pow(u, inv);
        ts[q] = t;
        ws[q] = scale * 0.5 * rule.weights[q] * std::pow(1.0 + t, beta);
      }
      break;
    }
  }
}

}  // namespace detail

namespace {

double weighted_panel_value(const std::function<double(double)>& f,
                            const JacobiParams& w, const detail::Panel& panel,
                            int order) {
  std::vector<double> ts, ws;
  detail::panel_weighted_nodes(panel, w, order, ts, ws);
  double sum = 0.0;
  for (std::size_t q = 0; q < ts.size(); ++q) sum += ws[q] * f(ts[q]);
  return sum;
}

}  // namespace

double integrate_weighted(const std::function<double(double)>& f,
                          const JacobiParams& weight_params, double a, double b,
                          double tol, double* err_estimate) {
  if (!(a < b) || a < -1.0 - 1e-13 || b > 1.0 + 1e-13) {
    throw std::invalid_argument("integrate_weighted: requires -1 <= a < b <= 1");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_weighted: tol must be > 0");
  a = std::max(a, -1.0);
  b = std::min(b, 1.0);

  struct Entry {
    detail::Panel panel;
    double value;
    double err;
  };
  std::vector<detail::Panel> plan = detail::weighted_panel_plan(a, b, weight_params, 0);

  auto evaluate = [&](const detail::Panel& p) -> Entry {
    const int lo_order = p.kind == detail::Panel::Kind::plain ? 32 : kPowerPanelOrder;
    const int hi_order = p.kind == detail::Panel::Kind::plain ? 48 : kPowerPanelOrder + 12;
    const double coarse = weighted_panel_value(f, weight_params, p, lo_order);
    const double fine = weighted_panel_value(f, weight_params, p, hi_order);
    return Entry{p, fine, std::abs(fine - coarse)};
  };

  std::vector<Entry> entries;
  entries.reserve(plan.size());
  for (const auto& p : plan) entries.push_back(evaluate(p));

  constexpr int kMaxPanels = 800;
  double total_err = 0.0;
  while (true) {
    total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      total_err += entries[i].err;
      if (entries[i].err > entries[worst].err) worst = i;
    }
    if (total_err <= tol) break;
    const Entry bad = entries[worst];
    if (bad.panel.kind != detail::Panel::Kind::plain ||
        static_cast<int>(entries.size()) >= kMaxPanels ||
        bad.panel.hi - bad.panel.lo < 1e-15) {
      throw QuadratureError("integrate_weighted: tolerance not reached within the panel budget");
    }
    detail::Panel left = bad.panel;
    detail::Panel right = bad.panel;
    left.hi = right.lo = 0.5 * (bad.panel.lo + bad.panel.hi);
    entries[worst] = evaluate(left);
    entries.push_back(evaluate(right));
  }

  if (err_estimate != nullptr) *err_estimate = total_err;
  double total = 0.0;
  for (const auto& e : entries) total += e.value;
  return total;
}

}  // namespace wjh
