#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "level_scan.hpp"
#include "random_configs.hpp"
#include "skycell/exclusion.hpp"
#include "skycell/model.hpp"

namespace skycell {
namespace {

// Boundaries located by bisection on the level comparison
// (tests/oracles/derive_pins.py); nullopt marks an empty interval.
constexpr double kR0 = 570.10424995822158;
constexpr double kRMax = 800.10366119329401;
const std::array<std::optional<double>, 12> kZAt100 = {
    std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
    kR0,          kRMax,        std::nullopt, 531.25451608227987, kRMax, std::nullopt};
const std::array<std::optional<double>, 12> kZAt650 = {
    kRMax,        std::nullopt, std::nullopt, 139.32877176110614, std::nullopt, std::nullopt,
    kR0,          kRMax,        kRMax,        kR0,                kRMax,        285.63473746606542};

void expect_z(const ZValues& got, const std::array<std::optional<double>, 12>& want) {
  for (std::size_t i = 0; i < 12; ++i) {
    ASSERT_EQ(got[i].has_value(), want[i].has_value()) << "z" << i + 1;
    if (want[i]) EXPECT_NEAR(*got[i], *want[i], 1e-8) << "z" << i + 1;
  }
}

void expect_same_sets(const RegionSet& a, const RegionSet& b, double tol) {
  const RegionSet x = a.without_points();
  const RegionSet y = b.without_points();
  ASSERT_EQ(x.size(), y.size()) << x << " vs " << y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(x.intervals()[i].lo, y.intervals()[i].lo, tol) << x << " vs " << y;
    EXPECT_NEAR(x.intervals()[i].hi, y.intervals()[i].hi, tol) << x << " vs " << y;
  }
}

TEST(ZValues, RhoOne) {
  auto c = reference_drone_config();
  // With A and alpha equal for both classes, z1 = sqrt(rho1 d_s^2 - dh^2).
  c.channel.alpha_los = 2.09;
  const Scenario sc(c);
  const double rho1 = std::pow(20.0, 2.0 / 2.09);
  EXPECT_NEAR(rho1, 17.579429645841794, 1e-12);
  const double rs = 150.0;
  const double expect = std::sqrt(rho1 * (rs * rs + 4900.0) - 4900.0);
  const auto z = z_values(rs, sc);
  ASSERT_TRUE(z[0].has_value());
  EXPECT_NEAR(*z[0], std::min(expect, sc.r_max()), 1e-9);
}

TEST(ZValues, PinnedVectors) {
  const Scenario sc(reference_drone_config());
  expect_z(z_values(100.0, sc), kZAt100);
  expect_z(z_values(650.0, sc), kZAt650);
}

TEST(ZValues, EqualGainDegeneracy) {
  auto c = reference_drone_config();
  c.antenna.g_main = c.antenna.g_side;
  const Scenario sc(c);
  const auto below = z_values(300.0, sc);
  EXPECT_FALSE(below[0].has_value());  // [r0, z1] empty when r_s < r0
  const auto above = z_values(650.0, sc);
  ASSERT_TRUE(above[0].has_value());
  EXPECT_NEAR(*above[0], 650.0, 1e-9);
}

TEST(StrongerSets, ClassicalCollapse) {
  auto c = reference_drone_config();
  c.antenna.g_main = c.antenna.g_side;
  c.channel.a_nlos_db = c.channel.a_los_db;
  c.channel.alpha_nlos = c.channel.alpha_los;
  const Scenario sc(c);
  for (double rs : {50.0, 300.0, 650.0}) {
    const auto sets = stronger_sets(make_serving(rs, LinkType::los, sc), sc);
    expect_same_sets(sets.no_los, RegionSet{{0.0, rs}}, 1e-9);
    expect_same_sets(sets.no_nlos, RegionSet{{0.0, rs}}, 1e-9);
  }
}

TEST(StrongerSets, LosSidelobeServerAt100) {
  const Scenario sc(reference_drone_config());
  const auto ctx = make_serving(100.0, LinkType::los, sc);
  EXPECT_EQ(ctx.lobe, Lobe::sidelobe);
  const auto sets = stronger_sets(ctx, sc);
  // z1 is empty at 100 m, so only [0, r_s] remains.
  expect_same_sets(sets.no_los, RegionSet{{0.0, 100.0}}, 1e-9);
  EXPECT_TRUE(sets.no_nlos.without_points().empty());
}

TEST(StrongerSets, NlosMainlobeServer) {
  const Scenario sc(reference_drone_config());
  const auto ctx = make_serving(650.0, LinkType::nlos, sc);
  EXPECT_EQ(ctx.lobe, Lobe::mainlobe);
  const auto sets = stronger_sets(ctx, sc);
  expect_same_sets(sets.no_nlos, RegionSet{{0.0, 285.63473746606542}, {kR0, 650.0}}, 1e-8);
}

TEST(StrongerSets, StrongestPossibleServer) {
  const Scenario sc(reference_drone_config());
  const auto sets = stronger_sets(make_serving(0.0, LinkType::los, sc), sc);
  EXPECT_EQ(sets.no_los.measure(), 0.0);
  EXPECT_TRUE(sets.no_los.contains(0.0));
}

TEST(StrongerSets, ClosedFormRejectsGroundUsers) {
  const Scenario sc(reference_ground_config());
  EXPECT_THROW(stronger_sets(make_serving(200.0, LinkType::los, sc), sc), std::domain_error);
  EXPECT_NO_THROW(exclusion_sets(make_serving(200.0, LinkType::los, sc), sc));
}

TEST(GeneralSolver, GroundPinnedSet) {
  const Scenario sc(reference_ground_config());
  const auto ctx = make_serving(200.0, LinkType::los, sc);
  EXPECT_EQ(ctx.lobe, Lobe::mainlobe);
  const auto sets = stronger_sets_general(ctx, sc);
  expect_same_sets(sets.no_los, RegionSet{{0.0, 37.7701320744049}, {70.675570974712585, 200.0}}, 1e-8);
  EXPECT_TRUE(sets.no_nlos.without_points().empty());

  // Cross-check against a 0.01 m scan.
  const double level = ctx.serving_signal / sc.p_tx();
  EXPECT_LE(oracle::worst_boundary_miss(sc.config(), true, level, sets.no_los, 2000.0, 0.01), 0.01);
  EXPECT_LE(oracle::worst_boundary_miss(sc.config(), false, level, sets.no_nlos, 2000.0, 0.01), 0.01);
}

using oracle::random_drone;

TEST(GeneralSolver, MatchesClosedFormOnRandomDrones) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Scenario sc(random_drone(rng));
    const double rs = u(rng) * sc.r_max() * 0.999;
    for (LinkType v : kLinkTypes) {
      const auto ctx = make_serving(rs, v, sc);
      const auto closed = stronger_sets(ctx, sc);
      const auto general = stronger_sets_general(ctx, sc);
      expect_same_sets(closed.no_los, general.no_los, 1e-9);
      expect_same_sets(closed.no_nlos, general.no_nlos, 1e-9);
    }
  }
}

// Larger r_s means a weaker server, so every exclusion set can only grow.
TEST(StrongerSetsProperty, MonotoneInServingDistance) {
  const Scenario sc(reference_drone_config());
  for (LinkType v : kLinkTypes) {
    for (const auto& [lo, hi] : {std::pair{1.0, 569.0}, std::pair{571.0, 799.0}}) {
      RegionSet prev_l = exclusion_sets(make_serving(lo, v, sc), sc).no_los;
      RegionSet prev_n = exclusion_sets(make_serving(lo, v, sc), sc).no_nlos;
      for (double rs = lo + 7.0; rs < hi; rs += 7.0) {
        const auto sets = exclusion_sets(make_serving(rs, v, sc), sc);
        EXPECT_GE(sets.no_los.measure() + 1e-9, prev_l.measure());
        EXPECT_GE(sets.no_nlos.measure() + 1e-9, prev_n.measure());
        EXPECT_NEAR(sets.no_los.intersect(prev_l).measure(), prev_l.measure(), 1e-9);
        EXPECT_NEAR(sets.no_nlos.intersect(prev_n).measure(), prev_n.measure(), 1e-9);
        prev_l = sets.no_los;
        prev_n = sets.no_nlos;
      }
    }
  }
}

TEST(StrongerSetsProperty, ServerOnSameTypeBoundaryAndWithinFootprint) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Scenario sc(random_drone(rng));
    const double rs = u(rng) * sc.r_max() * 0.999;
    for (LinkType v : kLinkTypes) {
      const auto sets = exclusion_sets(make_serving(rs, v, sc), sc);
      const RegionSet& same = sets.for_type(v);
      bool on_boundary = false;
      for (const auto& iv : same.intervals()) on_boundary |= (iv.hi == rs || iv.lo == rs);
      EXPECT_TRUE(on_boundary) << same << " r_s=" << rs;
      for (LinkType xi : kLinkTypes) {
        const RegionSet& a = sets.for_type(xi);
        const RegionSet abar = a.complement(sc.r_max());
        EXPECT_NEAR(a.measure() + abar.measure(), sc.r_max(), 1e-9);
        EXPECT_NEAR(a.intersect(abar).measure(), 0.0, 1e-9);
        for (const auto& iv : a.intervals()) {
          EXPECT_GE(iv.lo, 0.0);
          EXPECT_LE(iv.hi, sc.r_max());
        }
      }
    }
  }
}

TEST(StrongerSets, AgreesWithBruteForceScan) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario sc(random_drone(rng));
    const double rs = u(rng) * sc.r_max() * 0.999;
    for (LinkType v : kLinkTypes) {
      const auto ctx = make_serving(rs, v, sc);
      const auto sets = stronger_sets(ctx, sc);
      const double level = ctx.serving_signal / (sc.p_tx() * sc.ue_gain());
      for (LinkType xi : kLinkTypes) {
        EXPECT_LE(oracle::worst_boundary_miss(sc.config(), xi == LinkType::los, level, sets.for_type(xi),
                                              sc.r_max(), 0.01),
                  0.01);
      }
    }
  }
}

}  // namespace
}  // namespace skycell
