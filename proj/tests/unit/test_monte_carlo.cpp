#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "level_scan.hpp"
#include "skycell/analytic.hpp"
#include "skycell/model.hpp"
#include "skycell/monte_carlo.hpp"

namespace skycell {
namespace {

constexpr double kPi = std::numbers::pi;

McOptions threads(unsigned n) {
  McOptions o;
  o.threads = n;
  return o;
}

TEST(Sampling, DeterministicAcrossThreadCounts) {
  const Scenario sc(reference_drone_config());
  const std::vector<double> t = {0.1, 0.3, 1.0, 3.0};
  const auto a = estimate_ccdf(sc, {}, t, 5000, 42, threads(1));
  const auto b = estimate_ccdf(sc, {}, t, 5000, 42, threads(3));
  const auto c = estimate_ccdf(sc, {}, t, 5000, 42, threads(7));
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values, c.values);
  EXPECT_NE(a.values, estimate_ccdf(sc, {}, t, 5000, 43, threads(1)).values);
}

TEST(Sampling, IndexedStreams) {
  const Scenario sc(reference_drone_config());
  const auto x = sample_realization(sc, {}, 9, 5);
  const auto y = sample_realization(sc, {}, 9, 5);
  ASSERT_EQ(x.bs_list.size(), y.bs_list.size());
  for (std::size_t i = 0; i < x.bs_list.size(); ++i) EXPECT_EQ(x.bs_list[i].r, y.bs_list[i].r);
  const auto z = sample_realization(sc, {}, 9, 6);
  EXPECT_TRUE(z.bs_list.size() != x.bs_list.size() || z.bs_list.front().r != x.bs_list.front().r);
}

TEST(Sampling, PoissonCountUniformDiskAndLosThinning) {
  const Scenario sc(reference_drone_config());
  const double radius = sampling_radius(sc, {});
  EXPECT_NEAR(radius, sc.r_max(), 1e-9);
  const double expected = sc.lambda() * kPi * radius * radius;
  EXPECT_NEAR(expected, 20.1, 0.05);

  constexpr std::size_t n = 20000;
  double total = 0.0, inner = 0.0;
  std::size_t band = 0, band_los = 0;
  // P_L is constant on [1000/sqrt(ab), 2000/sqrt(ab)) = [81.6, 163.3).
  const double lo = 85.0, hi = 160.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto real = sample_realization(sc, {}, 11, i);
    total += static_cast<double>(real.bs_list.size());
    for (const auto& bs : real.bs_list) {
      ASSERT_LE(bs.r, radius);
      if (bs.r < radius / 2) inner += 1.0;
      if (bs.r >= lo && bs.r < hi) {
        ++band;
        if (bs.is_los) ++band_los;
      }
    }
  }
  EXPECT_NEAR(total / n, expected, 4.0 * std::sqrt(expected / n));
  const double share = inner / total;
  EXPECT_NEAR(share, 0.25, 4.0 * std::sqrt(0.25 * 0.75 / total));
  const double p = los_probability(100.0, sc);
  EXPECT_NEAR(static_cast<double>(band_los) / band, p, 4.0 * std::sqrt(p * (1 - p) / band));
}

TEST(Sampling, NakagamiPowerMoments) {
  const Scenario sc(reference_drone_config());  // m_L = 1, m_N = 3
  double sum[2] = {0, 0}, sq[2] = {0, 0}, above[2] = {0, 0}, cnt[2] = {0, 0};
  for (std::size_t i = 0; i < 20000; ++i) {
    for (const auto& bs : sample_realization(sc, {}, 3, i).bs_list) {
      const int k = bs.is_los ? 0 : 1;
      sum[k] += bs.fading;
      sq[k] += bs.fading * bs.fading;
      above[k] += bs.fading > 1.0 ? 1.0 : 0.0;
      cnt[k] += 1.0;
    }
  }
  for (int k = 0; k < 2; ++k) {
    const int m = k == 0 ? 1 : 3;
    const double var = 1.0 / m;
    EXPECT_NEAR(sum[k] / cnt[k], 1.0, 4.0 * std::sqrt(var / cnt[k]));
    EXPECT_NEAR(sq[k] / cnt[k] - std::pow(sum[k] / cnt[k], 2), var, 0.05 * var);
    const double q = fading_ccdf(1.0, m);
    EXPECT_NEAR(above[k] / cnt[k], q, 4.0 * std::sqrt(q * (1 - q) / cnt[k]));
  }
  EXPECT_NEAR(fading_ccdf(1.0, 3), 0.42319008112684352, 1e-14);
}

TEST(Sampling, RandomizedHeightsAndTilts) {
  const Scenario sc(reference_drone_config());
  RandomizationSpec rand;
  rand.h_bs_range = Interval{20.0, 40.0};
  rand.theta_t_range_deg = Interval{4.0, 12.0};
  EXPECT_NEAR(sampling_radius(sc, rand), footprint_radius(20.0, sc), 1e-9);
  for (std::size_t i = 0; i < 200; ++i) {
    for (const auto& bs : sample_realization(sc, rand, 5, i).bs_list) {
      EXPECT_GE(bs.h_bs, 20.0);
      EXPECT_LE(bs.h_bs, 40.0);
      EXPECT_GE(bs.theta_t_deg, 4.0);
      EXPECT_LE(bs.theta_t_deg, 12.0);
    }
  }
}

TEST(Sampling, DegenerateRandomizationMatchesFixedAntenna) {
  const Scenario sc(reference_drone_config());
  RandomizationSpec rand;
  rand.h_bs_range = Interval{30.0, 30.0};
  rand.theta_t_range_deg = Interval{8.0, 8.0};
  const auto mc = estimate_coverage(sc, rand, 20000, 6);
  EXPECT_NEAR(mc.mean, coverage_probability(sc).probability, 4.0 * mc.std_error);
}

BaseStation station(double r, bool los, double fading = 1.0) {
  const auto c = reference_drone_config();
  return {r, los, c.antenna.h_bs, c.antenna.theta_t_deg, fading};
}

TEST(Association, SidelobeNearBeatsMainlobeFar) {
  const Scenario sc(reference_drone_config());
  Realization real;
  real.bs_list = {station(600.0, true), station(100.0, true)};
  const auto a = associate(real, sc);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->index, 1u);
  EXPECT_EQ(a->context.lobe, Lobe::sidelobe);
  EXPECT_EQ(a->context.link, LinkType::los);
}

TEST(Association, NearestWinsWithoutMainlobe) {
  auto c = reference_drone_config();
  c.antenna.theta_t_deg = 40.0;
  const Scenario sc(c);
  EXPECT_TRUE(std::isinf(mainlobe_onset(sc)));
  Realization real;
  real.bs_list = {station(300.0, true), station(200.0, true), station(250.0, true)};
  for (auto& bs : real.bs_list) bs.theta_t_deg = 40.0;
  const auto a = associate(real, sc);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->index, 1u);
}

TEST(Association, TiesGoToLowerIndexAndEmptyHasNoServer) {
  const Scenario sc(reference_drone_config());
  Realization real;
  real.bs_list = {station(150.0, true, 0.2), station(150.0, true, 5.0)};
  EXPECT_EQ(associate(real, sc)->index, 0u);
  EXPECT_FALSE(associate(Realization{}, sc));
  real.bs_list = {station(900.0, true)};  // outside the footprint
  EXPECT_FALSE(associate(real, sc));
}

TEST(Sinr, HandComputedFixture) {
  const auto c = reference_drone_config();
  const Scenario sc(c);
  Realization real;
  real.bs_list = {station(300.0, false, 0.5), station(100.0, true, 2.0), station(900.0, true, 1.0)};
  const auto a = associate(real, sc);
  ASSERT_TRUE(a);
  ASSERT_EQ(a->index, 1u);

  const double ptx = std::pow(10.0, -6.0 / 10.0);
  const double gue = 29000.0 / (170.0 * 170.0);
  const double dh2 = 70.0 * 70.0;
  const double sig = ptx * gue * 0.5 * std::pow(10.0, -4.11) * std::pow(100.0 * 100.0 + dh2, -2.09 / 2) * 2.0;
  const double itf = ptx * gue * 0.5 * std::pow(10.0, -3.29) * std::pow(300.0 * 300.0 + dh2, -3.75 / 2) * 0.5;
  const auto parts = sinr(real, *a, sc);
  EXPECT_NEAR(parts.signal / sig, 1.0, 1e-12);
  EXPECT_NEAR(parts.interference / itf, 1.0, 1e-12);
  EXPECT_NEAR(parts.noise / std::pow(10.0, -12.5), 1.0, 1e-12);
  EXPECT_NEAR(parts.ratio(), sig / (itf + std::pow(10.0, -12.5)), 1e-9 * parts.ratio());
}

TEST(Sinr, NoiselessSingleStation) {
  auto c = reference_drone_config();
  c.n0_db = -kInf;
  const Scenario sc(c);
  Realization real;
  real.bs_list = {station(100.0, true)};
  const auto parts = sinr(real, *associate(real, sc), sc);
  EXPECT_EQ(parts.noise, 0.0);
  EXPECT_TRUE(std::isinf(parts.ratio()));
  EXPECT_TRUE(parts.covered(1e9));
}

TEST(Coverage, CcdfShape) {
  const Scenario sc(reference_drone_config());
  std::vector<double> t;
  for (int db = -30; db <= 30; db += 3) t.push_back(db_to_linear(db));
  const std::size_t n = 20000;
  const auto curve = estimate_ccdf(sc, {}, t, n, 8);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LE(curve.values[i], curve.values[i - 1]);
  const double served = 1.0 - std::exp(-sc.lambda() * kPi * sc.r_max() * sc.r_max());
  const auto low = estimate_ccdf(sc, {}, {1e-12}, n, 8);
  EXPECT_NEAR(low.values[0], served, 4.0 * std::sqrt(served * (1 - served) / n) + 1e-4);
  EXPECT_THROW(estimate_ccdf(sc, {}, {1.0, 0.5}, n, 8), std::invalid_argument);
  EXPECT_THROW(estimate_coverage(sc, {}, 0, 8), std::invalid_argument);
}

TEST(Coverage, VanishingDensityIsOutage) {
  auto c = reference_drone_config();
  c.lambda_bs = 1e-6;
  EXPECT_EQ(estimate_coverage(Scenario(c), {}, 2000, 1).mean, 0.0);
}

TEST(Coverage, LargeFadingShapeSimulates) {
  auto c = reference_drone_config();
  c.channel.m_los = c.channel.m_nlos = 100;
  const Scenario sc(c);
  double sum = 0.0, sq = 0.0, cnt = 0.0;
  for (std::size_t i = 0; i < 3000; ++i) {
    for (const auto& bs : sample_realization(sc, {}, 2, i).bs_list) {
      sum += bs.fading;
      sq += bs.fading * bs.fading;
      cnt += 1.0;
    }
  }
  EXPECT_NEAR(sq / cnt - std::pow(sum / cnt, 2), 0.01, 0.001);
  EXPECT_GT(estimate_coverage(sc, {}, 2000, 1).mean, 0.0);
}

TEST(ServingStats, AltitudeRaisesLosServing) {
  auto c = reference_drone_config();
  c.user.h_d = 50.0;
  const auto low = serving_stats(Scenario(c), {}, 20000, 4);
  c.user.h_d = 150.0;
  const auto high = serving_stats(Scenario(c), {}, 20000, 4);
  EXPECT_GT(high.mean_los_count, low.mean_los_count);
  EXPECT_GT(high.mean_interference, low.mean_interference);
  EXPECT_THROW(serving_stats(Scenario(c), {}, 0, 4), std::invalid_argument);
}

TEST(ServingStats, HistogramMatchesServingDensity) {
  const Scenario sc(reference_drone_config());
  HistogramSpec hist{0.0, 800.0, 40};
  const std::size_t n = 100000;
  const auto st = serving_stats(sc, {}, n, 21, hist);
  const double width = 20.0;
  double total = 0.0;
  for (double h : st.histogram) total += h * width;
  EXPECT_NEAR(total, 1.0, 1e-9);

  const auto summary = serving_summary(sc);
  auto pdf = [&](double r) {
    return serving_pdf(make_serving(r, LinkType::los, sc), sc) + serving_pdf(make_serving(r, LinkType::nlos, sc), sc);
  };
  using boost::math::quadrature::gauss_kronrod;
  for (std::size_t i = 0; i < hist.bins; ++i) {
    const double a = i * width, b = a + width;
    const double mass = gauss_kronrod<double, 61>::integrate(pdf, a, b, 12, 1e-10) / summary.mass;
    const double got = st.histogram[i] * width;
    EXPECT_NEAR(got, mass, 5.0 * std::sqrt(mass * (1 - mass) / st.served) + 1e-4) << a;
  }
  const double share = summary.los_share;
  EXPECT_NEAR(st.los_serving_share, share, 4.0 * std::sqrt(share * (1 - share) / st.served));
  EXPECT_NEAR(static_cast<double>(st.served) / n, summary.mass, 4.0 * std::sqrt(summary.mass / n));
}

// Conditional Laplace transform against a direct Palm estimate: drop every
// BS that would outrank the serving one, average exp(-s I) over the rest.
TEST(Laplace, MatchesConditionalSimulation) {
  const auto cfg = reference_drone_config();
  const Scenario sc(cfg);
  const oracle::RawLink link{cfg};
  for (LinkType v : kLinkTypes) {
    const double rs = 200.0;
    const auto ctx = make_serving(rs, v, sc);
    const double serving_level = link.level(rs, v == LinkType::los, link.gain(rs));
    const double s = laplace_argument(ctx, sc);
    const double scale = sc.p_tx() * sc.ue_gain();
    constexpr std::size_t n = 40000;
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double itf = 0.0;
      for (const auto& bs : sample_realization(sc, {}, 77, i).bs_list) {
        const double g = link.gain(bs.r);
        if (g == 0.0) continue;
        const double level = link.level(bs.r, bs.is_los, g);
        if (level >= serving_level) continue;
        itf += scale * level * bs.fading;
      }
      const double e = std::exp(-s * itf);
      sum += e;
      sq += e * e;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sq / n - mean * mean) / n);
    EXPECT_NEAR(laplace_interference(ctx, s, sc, 0).value, mean, 4.0 * se + 1e-4) << to_string(v);
  }
}

TEST(CrossCheck, DroneCoverageAgreesWithAnalytic) {
  const Scenario sc(reference_drone_config());
  const auto mc = estimate_coverage(sc, {}, 40000, 12);
  EXPECT_NEAR(mc.mean, coverage_probability(sc).probability, 4.0 * mc.std_error);
}

TEST(CrossCheck, GroundRadiusAndCoverage) {
  const Scenario sc(reference_ground_config());
  const double r = ground_sampling_radius(sc);
  EXPECT_GT(r, 1000.0);
  McOptions o;
  o.ground_radius = 3000.0;
  EXPECT_EQ(sampling_radius(sc, {}, o), 3000.0);
  const auto mc = estimate_coverage(sc, {}, 4000, 12);
  EXPECT_NEAR(mc.mean, coverage_probability(sc).probability, 4.0 * mc.std_error + 5e-4);
}

}  // namespace
}  // namespace skycell
