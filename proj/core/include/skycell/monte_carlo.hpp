#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skycell/exclusion.hpp"
#include "skycell/region_set.hpp"
#include "skycell/scenario.hpp"

namespace skycell {

/// Optional per-BS randomization of height and downtilt.
struct RandomizationSpec {
  std::optional<Interval> h_bs_range;         ///< uniform [lo, hi] meters
  std::optional<Interval> theta_t_range_deg;  ///< uniform [lo, hi] degrees

  bool active() const { return h_bs_range.has_value() || theta_t_range_deg.has_value(); }
};

struct BaseStation {
  double r = 0.0;  ///< ground distance [m]
  bool is_los = false;
  double h_bs = 0.0;
  double theta_t_deg = 0.0;
  double fading = 1.0;  ///< unit-mean Nakagami power
};

struct Realization {
  std::vector<BaseStation> bs_list;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_realizations = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  /// Worker threads; 0 reads SKYCELL_THREADS, falling back to the core count.
  unsigned threads = 0;
  /// Sampling disk for ground users; 0 selects ground_sampling_radius().
  double ground_radius = 0.0;
};

/// Ground-user sampling disk: where the neglected far-field mean interference
/// drops below 1e-6 of the total.
double ground_sampling_radius(const Scenario& sc);

/// Radius of the disk BSs are dropped in. Drones: the largest footprint any
/// BS height in the randomization range can produce.
double sampling_radius(const Scenario& sc, const RandomizationSpec& rand, const McOptions& opts = {});

/// Realization `index` of the stream identified by `seed`. Each index owns an
/// independent generator seeded from (seed, index).
Realization sample_realization(const Scenario& sc, const RandomizationSpec& rand, std::uint64_t seed,
                               std::uint64_t index, const McOptions& opts = {});

struct Association {
  std::size_t index = 0;  ///< position in Realization::bs_list
  ServingContext context;
};

/// Strongest average received power, fading excluded. Ties go to the smaller
/// distance, then the lower index. Empty when no BS has positive gain.
std::optional<Association> associate(const Realization& real, const Scenario& sc);

/// Received signal, aggregate interference and noise of one realization.
/// Coverage is decided by cross-multiplication so I + N0 == 0 is safe.
struct SinrParts {
  double signal = 0.0;
  double interference = 0.0;
  double noise = 0.0;

  bool covered(double threshold) const { return signal > threshold * (interference + noise); }
  double ratio() const;
};

SinrParts sinr(const Realization& real, const Association& serving, const Scenario& sc);

McEstimate estimate_coverage(const Scenario& sc, const RandomizationSpec& rand, std::size_t n, std::uint64_t seed,
                             const McOptions& opts = {});

struct CcdfCurve {
  std::vector<double> thresholds;  ///< linear, ascending
  std::vector<double> values;
  std::vector<double> std_errors;
  std::size_t n_realizations = 0;
  std::uint64_t seed = 0;
};

CcdfCurve estimate_ccdf(const Scenario& sc, const RandomizationSpec& rand, const std::vector<double>& thresholds,
                        std::size_t n, std::uint64_t seed, const McOptions& opts = {});

struct HistogramSpec {
  double lo = 0.0;
  double hi = 1000.0;
  std::size_t bins = 100;
};

struct ServingStats {
  std::size_t served = 0;
  std::size_t no_server = 0;
  double mean_serving_distance = 0.0;  ///< over served realizations
  double los_serving_share = 0.0;
  double mean_los_count = 0.0;  ///< LoS BSs inside the user cone, all realizations
  double mean_interference = 0.0;  ///< over served realizations
  double interference_std_error = 0.0;
  HistogramSpec histogram_spec;
  std::vector<double> histogram;  ///< density per meter over served realizations
};

ServingStats serving_stats(const Scenario& sc, const RandomizationSpec& rand, std::size_t n, std::uint64_t seed,
                           const HistogramSpec& hist = {}, const McOptions& opts = {});

/// Worker count from SKYCELL_THREADS, else std::thread::hardware_concurrency.
unsigned default_worker_count();

}  // namespace skycell
