#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skycell {

/// Tolerances and truncation policy for the analytic engine.
struct QuadratureSpec {
  double rel_tol = 1e-6;            ///< per inner integral component
  double abs_tol = 1e-15;           ///< floor for components that vanish
  double outer_abs_tol = 1e-6;      ///< on probabilities from the outer integral
  double truncation_radius = 50e3;  ///< minimum ground-user truncation [m]
  double tail_rel_tol = 1e-8;       ///< allowed interference-intensity tail share
  bool split_at_breakpoints = true; ///< panel edges at every known discontinuity
  std::size_t max_segments = 4000;
};

/// Quadrature failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

inline constexpr std::size_t kMaxComponents = 20;
using Components = std::array<double, kMaxComponents>;

struct QuadResult {
  Components value{};
  Components error{};
  bool converged = true;
  /// Largest error-to-tolerance ratio over components (<= 1 when converged).
  double worst_ratio = 0.0;
};

namespace detail {

struct Panel {
  double a, b;
  Components value, error;
};

struct Gk15 {
  static const std::array<double, 8>& nodes();
  static const std::array<double, 8>& kronrod_weights();
  static const std::array<double, 4>& gauss_weights();
};

template <class F>
Panel gk15(F& f, double a, double b, std::size_t n) {
  const auto& x = Gk15::nodes();
  const auto& wk = Gk15::kronrod_weights();
  const auto& wg = Gk15::gauss_weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Components k{}, g{}, fp{}, fm{};
  f(c, fp.data());
  for (std::size_t j = 0; j < n; ++j) {
    k[j] = fp[j] * wk[0];
    g[j] = fp[j] * wg[0];
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    f(c + h * x[i], fp.data());
    f(c - h * x[i], fm.data());
    for (std::size_t j = 0; j < n; ++j) {
      const double s = fp[j] + fm[j];
      k[j] += s * wk[i];
      if (i % 2 == 0) g[j] += s * wg[i / 2];
    }
  }
  Panel p{a, b, {}, {}};
  for (std::size_t j = 0; j < n; ++j) {
    p.value[j] = k[j] * h;
    p.error[j] = std::abs((k[j] - g[j]) * h);
  }
  return p;
}

}  // namespace detail

/// Globally adaptive 7/15-point Gauss-Kronrod integration of a vector-valued
/// integrand over consecutive panels [edges[i], edges[i+1]]. The integrand is
/// called as f(x, out) and writes `n` components. Panels are bisected, worst
/// first, until every component meets max(abs_tol, rel_tol * |total|).
template <class F>
QuadResult integrate_panels(F&& f, std::span<const double> edges, std::size_t n, double rel_tol,
                            double abs_tol, std::size_t max_segments) {
  if (n > kMaxComponents) throw std::invalid_argument("integrate_panels: too many components");
  std::vector<detail::Panel> panels;
  panels.reserve(edges.size() + 64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) panels.push_back(detail::gk15(f, edges[i], edges[i + 1], n));
  }

  QuadResult res;
  auto tally = [&] {
    res.value.fill(0.0);
    res.error.fill(0.0);
    for (const auto& p : panels) {
      for (std::size_t j = 0; j < n; ++j) {
        res.value[j] += p.value[j];
        res.error[j] += p.error[j];
      }
    }
  };
  auto tolerance = [&](std::size_t j) { return std::max(abs_tol, rel_tol * std::abs(res.value[j])); };

  tally();
  while (true) {
    res.worst_ratio = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.worst_ratio = std::max(res.worst_ratio, res.error[j] / tolerance(j));
    if (res.worst_ratio <= 1.0) break;
    if (panels.size() >= max_segments) {
      res.converged = false;
      break;
    }
    std::size_t worst = 0;
    double worst_weight = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double w = 0.0;
      for (std::size_t j = 0; j < n; ++j) w = std::max(w, panels[i].error[j] / tolerance(j));
      if (w > worst_weight) {
        worst_weight = w;
        worst = i;
      }
    }
    const auto [a, b, v, e] = panels[worst];
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) {
      res.converged = false;
      break;
    }
    panels[worst] = detail::gk15(f, a, mid, n);
    panels.push_back(detail::gk15(f, mid, b, n));
    tally();
  }
  return res;
}

/// Sorts, deduplicates and clips breakpoints to [lo, hi], keeping both ends.
std::vector<double> make_edges(std::vector<double> points, double lo, double hi);

}  // namespace skycell
