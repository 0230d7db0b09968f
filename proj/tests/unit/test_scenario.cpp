#include <gtest/gtest.h>

#include <cmath>

#include "skycell/model.hpp"
#include "skycell/scenario.hpp"

namespace skycell {
namespace {

std::string failing_field(const ScenarioConfig& cfg) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return {};
}

TEST(Scenario, ReferenceConfigsValidate) {
  EXPECT_NO_THROW(validate(reference_drone_config()));
  EXPECT_NO_THROW(validate(reference_ground_config()));
  EXPECT_EQ(reference_ground_config().user.kind, UserKind::ground);
  EXPECT_EQ(reference_ground_config().user.h_d, 0.0);
}

TEST(Scenario, ReferenceDefaults) {
  const auto c = reference_drone_config();
  EXPECT_EQ(c.channel.alpha_los, 2.09);
  EXPECT_EQ(c.channel.alpha_nlos, 3.75);
  EXPECT_EQ(c.channel.a_los_db, -41.1);
  EXPECT_EQ(c.channel.a_nlos_db, -32.9);
  EXPECT_EQ(c.channel.m_los, 1);
  EXPECT_EQ(c.channel.m_nlos, 3);
  EXPECT_EQ(c.p_tx_db, -6.0);
  EXPECT_EQ(c.threshold_t, 0.3);
  EXPECT_EQ(c.environment.a, 0.3);
  EXPECT_EQ(c.environment.b, 500.0);
  EXPECT_EQ(c.environment.c, 15.0);
  EXPECT_EQ(c.lambda_bs, 10.0);
  EXPECT_EQ(c.antenna.theta_b_deg, 30.0);
  EXPECT_EQ(c.antenna.theta_t_deg, 8.0);
  EXPECT_EQ(c.antenna.g_main, 10.0);
  EXPECT_EQ(c.antenna.g_side, 0.5);
  EXPECT_EQ(c.user.h_d, 100.0);
  EXPECT_EQ(c.antenna.h_bs, 30.0);
  EXPECT_EQ(c.user.phi_b_deg, 170.0);
}

TEST(Scenario, ValidationNamesTheField) {
  auto c = reference_drone_config();
  c.lambda_bs = 0.0;
  EXPECT_EQ(failing_field(c), "lambda_bs");

  c = reference_drone_config();
  c.environment.a = 1.0;
  EXPECT_EQ(failing_field(c), "environment.a");

  c = reference_drone_config();
  c.channel.m_nlos = 0;
  EXPECT_EQ(failing_field(c), "channel.m_nlos");

  c = reference_drone_config();
  c.antenna.g_side = -1.0;
  EXPECT_EQ(failing_field(c), "antenna.g_side");

  c = reference_drone_config();
  c.antenna.g_main = 0.1;
  EXPECT_EQ(failing_field(c), "antenna.g_main");

  c = reference_drone_config();
  c.user.h_d = c.antenna.h_bs;
  EXPECT_EQ(failing_field(c), "user.h_d");

  c = reference_drone_config();
  c.user.phi_b_deg = 180.0;
  EXPECT_EQ(failing_field(c), "user.phi_b_deg");

  c = reference_ground_config();
  c.user.h_d = 1.5;
  EXPECT_EQ(failing_field(c), "user.h_d");

  c = reference_drone_config();
  c.threshold_t = -0.1;
  EXPECT_EQ(failing_field(c), "threshold_t");

  c = reference_drone_config();
  c.antenna.theta_b_deg = 0.0;
  EXPECT_EQ(failing_field(c), "antenna.theta_b_deg");
}

TEST(Scenario, NoiseMayBeSwitchedOff) {
  auto c = reference_ground_config();
  c.n0_db = -kInf;
  const Scenario sc(c);
  EXPECT_EQ(sc.n0(), 0.0);
}

TEST(Scenario, AnalyticFadingCap) {
  auto c = reference_drone_config();
  c.channel.m_los = 100;
  EXPECT_NO_THROW(validate(c));
  try {
    require_analytic_fading(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "channel.m_los");
  }
  c.channel.m_los = kMaxSimulatedFadingShape + 1;
  EXPECT_EQ(failing_field(c), "channel.m_los");
}

TEST(Scenario, UnitConversions) {
  const Scenario sc(reference_drone_config());
  EXPECT_DOUBLE_EQ(sc.lambda(), 10e-6);
  EXPECT_NEAR(sc.p_tx(), std::pow(10.0, -0.6), 1e-15);
  EXPECT_NEAR(sc.theta_t(), 8.0 * M_PI / 180.0, 1e-15);
  EXPECT_DOUBLE_EQ(sc.delta_h(), 70.0);
  EXPECT_NEAR(sc.ue_gain(), 29000.0 / (170.0 * 170.0), 1e-12);
  EXPECT_NEAR(sc.los_step_rate(), std::sqrt(150.0) / 1000.0, 1e-15);
}

TEST(Scenario, GroundUserHasUnitGainAndUnboundedFootprint) {
  const Scenario sc(reference_ground_config());
  EXPECT_EQ(sc.ue_gain(), 1.0);
  EXPECT_TRUE(std::isinf(sc.r_max()));
  EXPECT_DOUBLE_EQ(sc.delta_h(), -30.0);
}

TEST(Scenario, LinkDistanceExamples) {
  EXPECT_DOUBLE_EQ(link_distance(0.0, 70.0), 70.0);
  EXPECT_DOUBLE_EQ(link_distance(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(link_distance(240.0, 70.0), 250.0);
  EXPECT_DOUBLE_EQ(link_distance(0.0, Scenario(reference_drone_config())), 70.0);
}

TEST(Scenario, DecibelHelpersRoundTrip) {
  for (double db : {-41.1, -6.0, 0.0, 13.0}) EXPECT_NEAR(linear_to_db(db_to_linear(db)), db, 1e-12);
}

}  // namespace
}  // namespace skycell
