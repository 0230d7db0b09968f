#pragma once

#include <vector>

#include "skycell/exclusion.hpp"
#include "skycell/quadrature.hpp"
#include "skycell/scenario.hpp"

namespace skycell {

/// Laplace transform of the conditional aggregate interference and its
/// derivatives; derivatives[k] = d^k/ds^k L(s), derivatives[0] == value.
struct LaplaceEval {
  double value = 1.0;
  double log_value = 0.0;  ///< log L(s), accurate even when L(s) rounds to 1

  std::vector<double> derivatives;
};

/// Switches used to derive the drone approximation from the exact engine.
struct AnalyticOptions {
  bool drop_nlos = false;     ///< lambda_N := 0 everywhere
  bool ignore_noise = false;  ///< N_0 := 0
};

struct CoverageResult {
  double probability = 0.0;  ///< P[SINR > T]; a missing server counts as outage
  double los_part = 0.0;     ///< contribution of LoS-served users
  double nlos_part = 0.0;
  double serving_mass = 0.0;  ///< P[a serving BS exists]
  double no_server = 0.0;     ///< 1 - serving_mass
  double abs_error = 0.0;     ///< outer quadrature error estimate
};

/// Per-interferer Laplace factor (m / (m + s P_tx g(r) zeta(r)))^m.
double upsilon(double r, double s, LinkType xi, const Scenario& sc);

/// d^j/ds^j of upsilon for j = 0..k_max.
std::vector<double> upsilon_derivatives(double r, double s, LinkType xi, const Scenario& sc, int k_max);

/// Laplace argument s_v = m_v T / (P_tx g(r_s) zeta_v(r_s)).
double laplace_argument(const ServingContext& serving, const Scenario& sc);

/// Density of the serving distance for a type-v server at r_s (per meter).
double serving_pdf(const ServingContext& serving, const Scenario& sc, const AnalyticOptions& opts = {});

LaplaceEval laplace_interference(const ServingContext& serving, double s, const Scenario& sc, int k_max,
                                 const QuadratureSpec& quad = {}, const AnalyticOptions& opts = {});

/// P[SINR > T | serving BS at r_s of type v].
double conditional_coverage(const ServingContext& serving, const Scenario& sc,
                            const QuadratureSpec& quad = {}, const AnalyticOptions& opts = {});

/// Exact coverage probability, integrating the conditional coverage against
/// the serving-distance density of both link types.
CoverageResult coverage_probability(const Scenario& sc, const QuadratureSpec& quad = {},
                                    const AnalyticOptions& opts = {});

/// LoS-only, noise-free drone approximation. Requires a drone user.
CoverageResult drone_coverage_approx(const Scenario& sc, const QuadratureSpec& quad = {});

/// E[I | serving BS at r_s of type v] = -L'(0).
double mean_conditional_interference(const ServingContext& serving, const Scenario& sc,
                                     const QuadratureSpec& quad = {});

struct ServingSummary {
  double mass = 0.0;           ///< P[a serving BS exists]
  double mean_distance = 0.0;  ///< E[R_S | served]
  double los_share = 0.0;      ///< P[serving link is LoS | served]
  double mean_interference = 0.0;  ///< E[I | served], averaged over R_S and link type
};

ServingSummary serving_summary(const Scenario& sc, const QuadratureSpec& quad = {});

/// Outer radius of every interference integral: r_max for drones, a
/// tail-bounded truncation radius for ground users.
double interference_domain_end(const Scenario& sc, const QuadratureSpec& quad = {});

/// Smallest radius (from start_radius, growing geometrically) beyond which an
/// upper bound on the mean interference is below rel_tol of its bulk.
double interference_tail_radius(const Scenario& sc, double rel_tol, double start_radius);

}  // namespace skycell
