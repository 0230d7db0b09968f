#include "skycell/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skycell {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

double drone_antenna_gain(double phi_b_deg) { return 29000.0 / (phi_b_deg * phi_b_deg); }

double link_distance(double r, double delta_h) { return std::hypot(r, delta_h); }

double link_distance(double r, const Scenario& sc) { return link_distance(r, sc.delta_h()); }

double path_loss(double r, LinkType v, const Scenario& sc) {
  const double dh = sc.delta_h();
  const double d2 = r * r + dh * dh;
  if (d2 == 0.0) throw std::domain_error("path_loss: reference-distance singularity at d = 0");
  return sc.path_gain_ref(v) * std::pow(d2, -sc.alpha(v) / 2.0);
}

Interval mainlobe_window(double h_bs, double theta_t, const Scenario& sc) {
  constexpr Interval kEmpty{0.0, 0.0};
  const double delta = sc.h_d() - h_bs;
  // The user sits at elevation beta(r) = atan2(delta, r) as seen from the BS;
  // it is inside the mainlobe when -(tilt + bw/2) < beta < -(tilt - bw/2).
  const double lo_ang = -(theta_t + sc.theta_b() / 2.0);
  const double hi_ang = -(theta_t - sc.theta_b() / 2.0);

  if (delta == 0.0) return (lo_ang < 0.0 && hi_ang > 0.0) ? Interval{0.0, kInf} : kEmpty;

  Interval w{0.0, kInf};
  if (delta > 0.0) {
    // beta falls from 90 deg towards 0 as r grows.
    if (hi_ang <= 0.0 || lo_ang >= kHalfPi) return kEmpty;
    if (hi_ang < kHalfPi) w.lo = delta / std::tan(hi_ang);
    if (lo_ang > 0.0) w.hi = delta / std::tan(lo_ang);
  } else {
    // beta rises from -90 deg towards 0 as r grows.
    const double depth = -delta;
    if (lo_ang >= 0.0 || hi_ang <= -kHalfPi) return kEmpty;
    if (lo_ang > -kHalfPi) w.lo = depth / std::tan(-lo_ang);
    if (hi_ang < 0.0) w.hi = depth / std::tan(-hi_ang);
  }
  return w.lo < w.hi ? w : kEmpty;
}

RegionSet mainlobe_region(const Scenario& sc) {
  const Interval w = mainlobe_window(sc.h_bs(), sc.theta_t(), sc);
  const double hi = std::min(w.hi, sc.r_max());
  if (!(w.lo < hi)) return {};
  return RegionSet{{w.lo, hi}};
}

double mainlobe_onset(const Scenario& sc) {
  const Interval w = mainlobe_window(sc.h_bs(), sc.theta_t(), sc);
  return w.lo < w.hi ? w.lo : kInf;
}

double footprint_radius(double h_bs, const Scenario& sc) {
  if (!sc.is_drone()) return kInf;
  const double delta = sc.h_d() - h_bs;
  return delta > 0.0 ? delta * std::tan(sc.half_cone()) : 0.0;
}

double station_gain(double r, double h_bs, double theta_t, const Scenario& sc) {
  if (!(r < footprint_radius(h_bs, sc))) return 0.0;
  const Interval w = mainlobe_window(h_bs, theta_t, sc);
  const double g = (w.lo < r && r < w.hi) ? sc.g_main() : sc.g_side();
  return g * sc.ue_gain();
}

double bs_gain(double r, const Scenario& sc) { return station_gain(r, sc.h_bs(), sc.theta_t(), sc); }

Lobe lobe_at(double r, const Scenario& sc) {
  const Interval w = mainlobe_window(sc.h_bs(), sc.theta_t(), sc);
  return (w.lo < r && r < w.hi) ? Lobe::mainlobe : Lobe::sidelobe;
}

double los_probability_at_step(long k, double h_bs, double h_d, const EnvironmentParams& env) {
  if (k <= 0) return 1.0;
  const double two_c2 = 2.0 * env.c * env.c;
  const double kk = static_cast<double>(k);
  double p = 1.0;
  for (long n = 0; n < k; ++n) {
    const double h = h_bs - (static_cast<double>(n) + 0.5) * (h_bs - h_d) / kk;
    p *= -std::expm1(-h * h / two_c2);
    if (p < 1e-300) return 0.0;
  }
  return p;
}

double los_probability(double r, double h_bs, double h_d, const EnvironmentParams& env) {
  // floor(r sqrt(ab)/1000 - 1) + 1 factors; an empty product below the first step.
  const double rate = std::sqrt(env.a * env.b) / 1000.0;
  return los_probability_at_step(static_cast<long>(std::floor(r * rate)), h_bs, h_d, env);
}

double los_probability(double r, const Scenario& sc) {
  return los_probability(r, sc.h_bs(), sc.h_d(), sc.config().environment);
}

Densities thinned_densities(double r, const Scenario& sc) {
  const double p = sc.los().at(r);
  return {sc.lambda() * p, sc.lambda() * (1.0 - p)};
}

double fading_ccdf(double omega, int m) {
  if (omega <= 0.0) return 1.0;
  if (std::isinf(omega)) return 0.0;
  const double x = m * omega;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= x / k;
    sum += term;
  }
  if (std::isinf(sum)) return 0.0;
  return sum * std::exp(-x);
}

LosProfile::LosProfile(double h_bs, double h_d, const EnvironmentParams& env, double extent)
    : h_bs_(h_bs), h_d_(h_d), env_(env), rate_(std::sqrt(env.a * env.b) / 1000.0) {
  for (std::size_t k = 0;; ++k) {
    if (k > 0 && step_radius(k) >= extent) {
      extent_ = extent;
      return;
    }
    if (k >= kMaxSteps) {
      extent_ = step_radius(k);
      return;
    }
    const double p = los_probability_at_step(static_cast<long>(k), h_bs_, h_d_, env_);
    if (p < kCutoff) {
      extent_ = step_radius(k);
      cut_off_ = true;
      return;
    }
    values_.push_back(p);
  }
}

double LosProfile::at(double r) const {
  const double x = std::floor(r * rate_);
  if (x < static_cast<double>(values_.size())) return values_[static_cast<std::size_t>(x)];
  if (cut_off_) return 0.0;
  return los_probability_at_step(static_cast<long>(x), h_bs_, h_d_, env_);
}

void LosProfile::append_breakpoints(double lo, double hi, std::vector<double>& out) const {
  const double top = std::min(hi, extent_);
  const auto first = static_cast<std::size_t>(std::max(1.0, std::floor(lo * rate_) + 1.0));
  for (std::size_t k = first;; ++k) {
    const double r = step_radius(k);
    if (r > top || r >= hi) break;
    if (r > lo) out.push_back(r);
  }
}

}  // namespace skycell
