#include "skycell/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "skycell/analytic.hpp"
#include "skycell/model.hpp"

namespace skycell {

namespace {

constexpr double kGroundTailShare = 1e-6;
constexpr double kGroundStartRadius = 500.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Gain and path loss of one BS as seen by the user, honouring per-BS
// height/tilt when the realization carries randomized values.
struct LinkBudget {
  double gain = 0.0;
  double path = 0.0;
  double level() const { return gain * path; }
};

class StationModel {
 public:
  explicit StationModel(const Scenario& sc) : sc_(sc) {
    fixed_window_ = mainlobe_window(sc.h_bs(), sc.theta_t(), sc);
    fixed_footprint_ = footprint_radius(sc.h_bs(), sc);
  }

  LinkBudget evaluate(const BaseStation& bs) const {
    const bool fixed = bs.h_bs == sc_.h_bs() && bs.theta_t_deg == sc_.config().antenna.theta_t_deg;
    const double footprint = fixed ? fixed_footprint_ : footprint_radius(bs.h_bs, sc_);
    if (!(bs.r < footprint)) return {};
    const Interval w = fixed ? fixed_window_ : mainlobe_window(bs.h_bs, deg_to_rad(bs.theta_t_deg), sc_);
    const double g = ((w.lo < bs.r && bs.r < w.hi) ? sc_.g_main() : sc_.g_side()) * sc_.ue_gain();
    const LinkType v = bs.is_los ? LinkType::los : LinkType::nlos;
    const double dh = sc_.h_d() - bs.h_bs;
    const double d2 = bs.r * bs.r + dh * dh;
    return {g, sc_.path_gain_ref(v) * std::pow(d2, -sc_.alpha(v) / 2.0)};
  }

 private:
  const Scenario& sc_;
  Interval fixed_window_;
  double fixed_footprint_ = 0.0;
};

struct Outcome {
  bool served = false;
  bool los_server = false;
  double r_s = 0.0;
  double signal = 0.0;
  double interference = 0.0;
  std::uint32_t los_visible = 0;
};

template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
}

void sample_into(Realization& real, const Scenario& sc, const RandomizationSpec& rand, std::uint64_t seed,
                 std::uint64_t index, double radius) {
  real.bs_list.clear();
  std::mt19937_64 rng(stream_seed(seed, index));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double mean_count = sc.lambda() * std::numbers::pi * radius * radius;
  if (!(mean_count > 0.0)) return;
  std::poisson_distribution<long> count_dist(mean_count);
  const long count = count_dist(rng);
  real.bs_list.reserve(static_cast<std::size_t>(count));

  std::gamma_distribution<double> fade_los(sc.fading_shape(LinkType::los), 1.0 / sc.fading_shape(LinkType::los));
  std::gamma_distribution<double> fade_nlos(sc.fading_shape(LinkType::nlos),
                                            1.0 / sc.fading_shape(LinkType::nlos));
  const auto& env = sc.config().environment;

  for (long i = 0; i < count; ++i) {
    BaseStation bs;
    bs.r = radius * std::sqrt(unit(rng));
    bs.h_bs = sc.h_bs();
    bs.theta_t_deg = sc.config().antenna.theta_t_deg;
    if (rand.h_bs_range) bs.h_bs = rand.h_bs_range->lo + unit(rng) * rand.h_bs_range->length();
    if (rand.theta_t_range_deg) {
      bs.theta_t_deg = rand.theta_t_range_deg->lo + unit(rng) * rand.theta_t_range_deg->length();
    }
    const double p_los = rand.h_bs_range ? los_probability(bs.r, bs.h_bs, sc.h_d(), env) : sc.los().at(bs.r);
    bs.is_los = unit(rng) < p_los;
    bs.fading = bs.is_los ? fade_los(rng) : fade_nlos(rng);
    real.bs_list.push_back(bs);
  }
}

Outcome evaluate(const Realization& real, const Scenario& sc, const StationModel& model) {
  Outcome out;
  std::size_t best = 0;
  double best_level = 0.0;
  std::vector<LinkBudget> budgets(real.bs_list.size());
  for (std::size_t i = 0; i < real.bs_list.size(); ++i) {
    const auto& bs = real.bs_list[i];
    budgets[i] = model.evaluate(bs);
    if (budgets[i].gain > 0.0 && bs.is_los) ++out.los_visible;
    const double level = budgets[i].level();
    if (!(level > 0.0)) continue;
    if (!out.served || level > best_level || (level == best_level && bs.r < real.bs_list[best].r)) {
      out.served = true;
      best = i;
      best_level = level;
    }
  }
  if (!out.served) return out;
  double interference = 0.0;
  for (std::size_t i = 0; i < real.bs_list.size(); ++i) {
    if (i == best || budgets[i].gain == 0.0) continue;
    interference += sc.p_tx() * budgets[i].level() * real.bs_list[i].fading;
  }
  out.r_s = real.bs_list[best].r;
  out.los_server = real.bs_list[best].is_los;
  out.signal = sc.p_tx() * best_level * real.bs_list[best].fading;
  out.interference = interference;
  return out;
}

std::vector<Outcome> simulate(const Scenario& sc, const RandomizationSpec& rand, std::size_t n, std::uint64_t seed,
                              const McOptions& opts) {
  std::vector<Outcome> outcomes(n);
  const double radius = sampling_radius(sc, rand, opts);
  const StationModel model(sc);
  const unsigned workers = opts.threads > 0 ? opts.threads : default_worker_count();
  parallel_for(n, workers, [&](std::size_t lo, std::size_t hi) {
    Realization real;
    for (std::size_t i = lo; i < hi; ++i) {
      sample_into(real, sc, rand, seed, i, radius);
      outcomes[i] = evaluate(real, sc, model);
    }
  });
  return outcomes;
}

double binomial_std_error(double p, std::size_t n) {
  return n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

}  // namespace

unsigned default_worker_count() {
  if (const char* env = std::getenv("SKYCELL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double ground_sampling_radius(const Scenario& sc) {
  return interference_tail_radius(sc, kGroundTailShare, kGroundStartRadius);
}

double sampling_radius(const Scenario& sc, const RandomizationSpec& rand, const McOptions& opts) {
  if (!sc.is_drone()) return opts.ground_radius > 0.0 ? opts.ground_radius : ground_sampling_radius(sc);
  const double lowest_bs = rand.h_bs_range ? rand.h_bs_range->lo : sc.h_bs();
  return footprint_radius(lowest_bs, sc);
}

Realization sample_realization(const Scenario& sc, const RandomizationSpec& rand, std::uint64_t seed,
                               std::uint64_t index, const McOptions& opts) {
  Realization real;
  sample_into(real, sc, rand, seed, index, sampling_radius(sc, rand, opts));
  return real;
}

std::optional<Association> associate(const Realization& real, const Scenario& sc) {
  const StationModel model(sc);
  std::optional<Association> best;
  double best_level = 0.0;
  for (std::size_t i = 0; i < real.bs_list.size(); ++i) {
    const auto& bs = real.bs_list[i];
    const LinkBudget lb = model.evaluate(bs);
    const double level = lb.level();
    if (!(level > 0.0)) continue;
    if (!best || level > best_level || (level == best_level && bs.r < real.bs_list[best->index].r)) {
      const LinkType v = bs.is_los ? LinkType::los : LinkType::nlos;
      const Lobe lobe = lb.gain == sc.g_main() * sc.ue_gain() && sc.g_main() != sc.g_side() ? Lobe::mainlobe
                                                                                           : lobe_at(bs.r, sc);
      best = Association{i, ServingContext{bs.r, v, lobe, sc.p_tx() * level}};
      best_level = level;
    }
  }
  return best;
}

double SinrParts::ratio() const {
  const double denom = interference + noise;
  if (denom == 0.0) return signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return signal / denom;
}

SinrParts sinr(const Realization& real, const Association& serving, const Scenario& sc) {
  const StationModel model(sc);
  SinrParts out;
  out.noise = sc.n0();
  for (std::size_t i = 0; i < real.bs_list.size(); ++i) {
    const auto& bs = real.bs_list[i];
    const LinkBudget lb = model.evaluate(bs);
    const double power = sc.p_tx() * lb.level() * bs.fading;
    if (i == serving.index) {
      out.signal = power;
    } else if (lb.gain > 0.0) {
      out.interference += power;
    }
  }
  return out;
}

McEstimate estimate_coverage(const Scenario& sc, const RandomizationSpec& rand, std::size_t n, std::uint64_t seed,
                             const McOptions& opts) {
  if (n == 0) throw std::invalid_argument("estimate_coverage: n must be >= 1");
  const auto outcomes = simulate(sc, rand, n, seed, opts);
  std::size_t hits = 0;
  for (const auto& o : outcomes) {
    if (o.served && o.signal > sc.threshold() * (o.interference + sc.n0())) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, binomial_std_error(p, n), n, seed};
}

CcdfCurve estimate_ccdf(const Scenario& sc, const RandomizationSpec& rand, const std::vector<double>& thresholds,
                        std::size_t n, std::uint64_t seed, const McOptions& opts) {
  if (n == 0) throw std::invalid_argument("estimate_ccdf: n must be >= 1");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("estimate_ccdf: thresholds must be ascending");
  }
  const auto outcomes = simulate(sc, rand, n, seed, opts);
  CcdfCurve curve;
  curve.thresholds = thresholds;
  curve.n_realizations = n;
  curve.seed = seed;
  for (double t : thresholds) {
    std::size_t hits = 0;
    for (const auto& o : outcomes) {
      if (o.served && o.signal > t * (o.interference + sc.n0())) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    curve.values.push_back(p);
    curve.std_errors.push_back(binomial_std_error(p, n));
  }
  return curve;
}

ServingStats serving_stats(const Scenario& sc, const RandomizationSpec& rand, std::size_t n, std::uint64_t seed,
                           const HistogramSpec& hist, const McOptions& opts) {
  if (n == 0) throw std::invalid_argument("serving_stats: n must be >= 1");
  if (hist.bins == 0 || !(hist.hi > hist.lo)) throw std::invalid_argument("serving_stats: bad histogram spec");
  const auto outcomes = simulate(sc, rand, n, seed, opts);

  ServingStats st;
  st.histogram_spec = hist;
  st.histogram.assign(hist.bins, 0.0);
  const double width = (hist.hi - hist.lo) / static_cast<double>(hist.bins);
  double sum_r = 0.0, sum_i = 0.0, sum_i2 = 0.0, los_count = 0.0;
  std::size_t los_served = 0;
  for (const auto& o : outcomes) {
    los_count += o.los_visible;
    if (!o.served) {
      ++st.no_server;
      continue;
    }
    ++st.served;
    if (o.los_server) ++los_served;
    sum_r += o.r_s;
    sum_i += o.interference;
    sum_i2 += o.interference * o.interference;
    if (o.r_s >= hist.lo && o.r_s < hist.hi) {
      st.histogram[static_cast<std::size_t>((o.r_s - hist.lo) / width)] += 1.0;
    }
  }
  st.mean_los_count = los_count / static_cast<double>(n);
  if (st.served > 0) {
    const double k = static_cast<double>(st.served);
    st.mean_serving_distance = sum_r / k;
    st.los_serving_share = static_cast<double>(los_served) / k;
    st.mean_interference = sum_i / k;
    const double var = std::max(0.0, sum_i2 / k - st.mean_interference * st.mean_interference);
    st.interference_std_error = std::sqrt(var / k);
    for (double& h : st.histogram) h /= k * width;
  }
  return st;
}

}  // namespace skycell
