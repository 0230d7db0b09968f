#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config_file.hpp"
#include "csv.hpp"

namespace skycell::cli {

enum class Engine { analytic, theorem2, monte_carlo };

/// Accepts analytic, theorem2, mc and monte_carlo.
Engine parse_engine(const std::string& name);
const char* engine_name(Engine e);  ///< CSV spelling: analytic | theorem2 | mc

enum class SweepParameter { bs_height, drone_altitude, beamwidth_phi, density_lambda, threshold, bs_density_and_height };

SweepParameter parse_sweep_parameter(const std::string& name);
const char* sweep_parameter_name(SweepParameter p);

inline constexpr std::size_t kDefaultMcN = 100000;
inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunSettings {
  std::vector<Engine> engines;
  std::size_t mc_n = kDefaultMcN;
  std::uint64_t seed = kDefaultSeed;
};

/// Engines that were requested but do not apply, with the reason.
struct RunNotes {
  std::vector<std::string> notes;
};

// ---- ccdf ----------------------------------------------------------------

struct CcdfRow {
  double threshold_db = 0.0;
  Engine engine = Engine::analytic;
  double value = 0.0;
  std::optional<double> std_error;
};

std::vector<double> default_ccdf_grid_db();

/// One row per (engine, threshold), engines in request order.
std::vector<CcdfRow> run_ccdf(const RunConfig& cfg, const std::vector<double>& thresholds_db,
                              const RunSettings& settings, RunNotes* notes = nullptr);
CsvTable ccdf_table(const std::vector<CcdfRow>& rows);

// ---- sweep ---------------------------------------------------------------

/// A grid point. `secondary` carries lambda_bs for bs_density_and_height.
struct GridPoint {
  double value = 0.0;
  std::optional<double> secondary;
};

/// Comma-separated values; bs_density_and_height takes `lambda:h_bs` pairs.
std::vector<GridPoint> parse_grid(SweepParameter p, const std::string& text);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::bs_height;
  std::vector<GridPoint> grid;
  RunSettings settings;
};

struct SweepRow {
  GridPoint point;
  Engine engine = Engine::analytic;
  double coverage = 0.0;
  std::optional<double> std_error;
  bool argmax = false;  ///< best coverage within its (engine, secondary) group
};

/// Applies a grid point to a copy of `base`. Throws ConfigError if invalid.
RunConfig apply_point(const RunConfig& base, SweepParameter p, const GridPoint& point);

/// Rows in grid order; within a grid point, engines in request order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RunConfig& base, RunNotes* notes = nullptr);
CsvTable sweep_table(SweepParameter p, const std::vector<SweepRow>& rows);

// ---- interference profile -----------------------------------------------

struct InterferenceRow {
  double h_d = 0.0;
  double mean_serving_distance = 0.0;  ///< analytic E[R_S | served]
  double analytic_conditional = 0.0;   ///< E[I | LoS server at mean_serving_distance]
  double analytic_mean = 0.0;          ///< E[I | served]
  std::optional<double> mc_mean;
  std::optional<double> mc_std_error;
};

std::vector<InterferenceRow> run_interference_profile(const RunConfig& base, const std::vector<double>& altitudes,
                                                      const RunSettings& settings);
CsvTable interference_table(const std::vector<InterferenceRow>& rows);

}  // namespace skycell::cli
