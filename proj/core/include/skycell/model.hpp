#pragma once

#include <cstddef>
#include <vector>

#include "skycell/region_set.hpp"
#include "skycell/scenario.hpp"

namespace skycell {

/// Drone cone antenna gain, 29000 / phi_B^2 with phi_B in degrees.
double drone_antenna_gain(double phi_b_deg);

double link_distance(double r, double delta_h);
double link_distance(double r, const Scenario& sc);

/// A_v * d^(-alpha_v) in linear units. Throws std::domain_error when d == 0.
double path_loss(double r, LinkType v, const Scenario& sc);

/// Open interval (lo, hi) of ground distances lit by the BS mainlobe for a BS
/// of height h_bs and downtilt theta_t (radians), ignoring the user cone.
/// lo == hi means the mainlobe never reaches the user.
Interval mainlobe_window(double h_bs, double theta_t, const Scenario& sc);

/// Mainlobe region of the configured BS antenna, clipped to [0, r_max].
RegionSet mainlobe_region(const Scenario& sc);

/// Distance where a drone above the BSs enters the mainlobe; +inf when the
/// mainlobe never points above the horizon.
double mainlobe_onset(const Scenario& sc);

/// Total antenna gain g(r): g_main*g_ue, g_side*g_ue or 0 outside the user cone.
double bs_gain(double r, const Scenario& sc);

/// bs_gain for a BS with its own height and downtilt (radians).
double station_gain(double r, double h_bs, double theta_t, const Scenario& sc);

/// Drone footprint radius for a BS of height h_bs; +inf for ground users and
/// 0 when the BS is not below the drone.
double footprint_radius(double h_bs, const Scenario& sc);

Lobe lobe_at(double r, const Scenario& sc);

/// Blockage-model LoS probability between a BS of height h_bs and a user at
/// h_d separated by ground distance r (meters).
double los_probability(double r, double h_bs, double h_d, const EnvironmentParams& env);
double los_probability(double r, const Scenario& sc);

/// LoS probability at the k-th step (k = m + 1 in the product, k = 0 is the
/// empty product).
double los_probability_at_step(long k, double h_bs, double h_d, const EnvironmentParams& env);

struct Densities {
  double los = 0.0;   ///< per m^2
  double nlos = 0.0;  ///< per m^2
};

Densities thinned_densities(double r, const Scenario& sc);

/// 1 - F(omega) for unit-mean Nakagami power with integer shape m.
double fading_ccdf(double omega, int m);

/// Tabulated LoS probability for one (h_bs, h_d) pair. The probability is
/// constant on [k / rate, (k + 1) / rate); the table runs until `extent` or
/// until the value drops below kCutoff, after which it is treated as zero.
class LosProfile {
 public:
  static constexpr double kCutoff = 1e-20;
  static constexpr std::size_t kMaxSteps = 8000;

  LosProfile(double h_bs, double h_d, const EnvironmentParams& env, double extent);

  double at(double r) const;
  double step_rate() const noexcept { return rate_; }
  /// Radius of the k-th step boundary (k >= 1).
  double step_radius(std::size_t k) const { return static_cast<double>(k) / rate_; }
  /// Largest radius covered by the table. Beyond it the value is either zero
  /// (cut off) or evaluated directly.
  double table_extent() const noexcept { return extent_; }
  bool cut_off() const noexcept { return cut_off_; }

  /// Step boundaries strictly inside (lo, hi) that the table resolves.
  void append_breakpoints(double lo, double hi, std::vector<double>& out) const;

 private:
  double h_bs_, h_d_;
  EnvironmentParams env_;
  double rate_;
  double extent_ = 0.0;
  bool cut_off_ = false;
  std::vector<double> values_;
};

}  // namespace skycell
