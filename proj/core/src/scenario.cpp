#include "skycell/scenario.hpp"

#include <cmath>

#include "skycell/model.hpp"

namespace skycell {

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

ScenarioConfig reference_drone_config() { return ScenarioConfig{}; }

ScenarioConfig reference_ground_config() {
  ScenarioConfig cfg;
  cfg.user.kind = UserKind::ground;
  cfg.user.h_d = 0.0;
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  require(finite(cfg.lambda_bs) && cfg.lambda_bs > 0, "lambda_bs", "must be > 0");
  require(finite(cfg.p_tx_db), "p_tx_db", "must be finite");
  require(!std::isnan(cfg.n0_db) && cfg.n0_db != kInf, "n0_db", "must be finite or -inf");
  require(finite(cfg.threshold_t) && cfg.threshold_t > 0, "threshold_t", "must be > 0");

  const auto& env = cfg.environment;
  require(env.a > 0 && env.a < 1, "environment.a", "must lie in (0, 1)");
  require(finite(env.b) && env.b > 0, "environment.b", "must be > 0");
  require(finite(env.c) && env.c > 0, "environment.c", "must be > 0");

  const auto& ch = cfg.channel;
  require(finite(ch.alpha_los) && ch.alpha_los > 0, "channel.alpha_los", "must be > 0");
  require(finite(ch.alpha_nlos) && ch.alpha_nlos > 0, "channel.alpha_nlos", "must be > 0");
  require(finite(ch.a_los_db), "channel.a_los_db", "must be finite");
  require(finite(ch.a_nlos_db), "channel.a_nlos_db", "must be finite");
  require(ch.m_los >= 1 && ch.m_los <= kMaxSimulatedFadingShape, "channel.m_los",
          "must be an integer in [1, " + std::to_string(kMaxSimulatedFadingShape) + "]");
  require(ch.m_nlos >= 1 && ch.m_nlos <= kMaxSimulatedFadingShape, "channel.m_nlos",
          "must be an integer in [1, " + std::to_string(kMaxSimulatedFadingShape) + "]");

  const auto& ant = cfg.antenna;
  require(ant.theta_b_deg > 0 && ant.theta_b_deg < 180, "antenna.theta_b_deg",
          "must lie in (0, 180)");
  require(ant.theta_t_deg > -90 && ant.theta_t_deg < 90, "antenna.theta_t_deg",
          "must lie in (-90, 90)");
  require(finite(ant.g_side) && ant.g_side > 0, "antenna.g_side", "must be > 0");
  require(finite(ant.g_main) && ant.g_main >= ant.g_side, "antenna.g_main",
          "must be >= antenna.g_side");
  require(finite(ant.h_bs) && ant.h_bs >= 0, "antenna.h_bs", "must be >= 0");

  const auto& ue = cfg.user;
  if (ue.kind == UserKind::ground) {
    require(ue.h_d == 0.0, "user.h_d", "must be 0 for a ground user");
  } else {
    require(finite(ue.h_d) && ue.h_d > ant.h_bs, "user.h_d",
            "drone altitude must exceed antenna.h_bs");
    require(ue.phi_b_deg > 0 && ue.phi_b_deg < 180, "user.phi_b_deg", "must lie in (0, 180)");
  }
}

void require_analytic_fading(const ScenarioConfig& cfg) {
  const std::string limit = "analytic evaluation needs an integer in [1, " + std::to_string(kMaxFadingShape) + "]";
  require(cfg.channel.m_los <= kMaxFadingShape, "channel.m_los", limit);
  require(cfg.channel.m_nlos <= kMaxFadingShape, "channel.m_nlos", limit);
}

Scenario::Scenario(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  lambda_m2_ = cfg_.lambda_bs * 1e-6;
  p_tx_ = db_to_linear(cfg_.p_tx_db);
  n0_ = std::isinf(cfg_.n0_db) ? 0.0 : db_to_linear(cfg_.n0_db);
  a_los_ = db_to_linear(cfg_.channel.a_los_db);
  a_nlos_ = db_to_linear(cfg_.channel.a_nlos_db);
  theta_b_ = deg_to_rad(cfg_.antenna.theta_b_deg);
  theta_t_ = deg_to_rad(cfg_.antenna.theta_t_deg);
  los_rate_ = std::sqrt(cfg_.environment.a * cfg_.environment.b) / 1000.0;

  if (is_drone()) {
    half_cone_ = deg_to_rad(cfg_.user.phi_b_deg) / 2.0;
    ue_gain_ = drone_antenna_gain(cfg_.user.phi_b_deg);
    r_max_ = delta_h() * std::tan(half_cone_);
    if (!std::isfinite(r_max_)) {
      throw ConfigError("user.phi_b_deg", "drone footprint radius is not finite");
    }
  }
  los_ = std::make_shared<LosProfile>(h_bs(), h_d(), cfg_.environment, r_max_);
}

const char* to_string(LinkType v) { return v == LinkType::los ? "los" : "nlos"; }
const char* to_string(UserKind k) { return k == UserKind::ground ? "ground" : "drone"; }

}  // namespace skycell
