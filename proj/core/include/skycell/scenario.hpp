#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace skycell {

enum class LinkType { los, nlos };
enum class Lobe { mainlobe, sidelobe };
enum class UserKind { ground, drone };

inline constexpr LinkType kLinkTypes[] = {LinkType::los, LinkType::nlos};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Building statistics of the blockage model.
struct EnvironmentParams {
  double a = 0.3;    ///< fraction of land covered by buildings
  double b = 500.0;  ///< buildings per km^2
  double c = 15.0;   ///< Rayleigh scale of building height [m]
};

struct ChannelParams {
  double alpha_los = 2.09;
  double alpha_nlos = 3.75;
  double a_los_db = -41.1;   ///< path loss at d = 1 m
  double a_nlos_db = -32.9;
  int m_los = 1;             ///< Nakagami shape, positive integer
  int m_nlos = 3;
};

/// Two-level vertically sectored BS antenna.
struct BsAntenna {
  double theta_b_deg = 30.0;  ///< vertical beamwidth
  double theta_t_deg = 8.0;   ///< downtilt
  double g_main = 10.0;
  double g_side = 0.5;
  double h_bs = 30.0;
};

struct UserTerminal {
  UserKind kind = UserKind::drone;
  double h_d = 100.0;
  double phi_b_deg = 170.0;  ///< drone cone beamwidth, ignored for ground users
};

/// Noise floor used when a config file leaves `n0_db` unset.
inline constexpr double kDefaultNoiseDb = -125.0;

/// Largest Nakagami shape the analytic engine accepts (derivative order m - 1).
inline constexpr int kMaxFadingShape = 10;

/// Largest Nakagami shape accepted by validation; simulation-only above kMaxFadingShape.
inline constexpr int kMaxSimulatedFadingShape = 1000;

struct ScenarioConfig {
  double lambda_bs = 10.0;  ///< BSs per km^2
  double p_tx_db = -6.0;
  double n0_db = kDefaultNoiseDb;
  double threshold_t = 0.3;  ///< linear SINR threshold
  EnvironmentParams environment;
  ChannelParams channel;
  BsAntenna antenna;
  UserTerminal user;
};

/// Reference parameter sets (drone at 100 m and a ground user).
ScenarioConfig reference_drone_config();
ScenarioConfig reference_ground_config();

/// Raised for invalid parameters. `field()` is the dotted config path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Throws ConfigError on the first violated invariant.
void validate(const ScenarioConfig& cfg);

/// Throws ConfigError when a fading shape exceeds kMaxFadingShape.
void require_analytic_fading(const ScenarioConfig& cfg);

class LosProfile;

/// Validated configuration plus the derived linear/SI quantities every model
/// function needs. Angles are converted to radians once, here.
class Scenario {
 public:
  explicit Scenario(ScenarioConfig cfg);

  const ScenarioConfig& config() const noexcept { return cfg_; }

  bool is_drone() const noexcept { return cfg_.user.kind == UserKind::drone; }
  double lambda() const noexcept { return lambda_m2_; }  ///< per m^2
  double p_tx() const noexcept { return p_tx_; }
  double n0() const noexcept { return n0_; }
  double threshold() const noexcept { return cfg_.threshold_t; }

  double h_bs() const noexcept { return cfg_.antenna.h_bs; }
  double h_d() const noexcept { return cfg_.user.h_d; }
  double delta_h() const noexcept { return cfg_.user.h_d - cfg_.antenna.h_bs; }
  double theta_b() const noexcept { return theta_b_; }
  double theta_t() const noexcept { return theta_t_; }
  double g_main() const noexcept { return cfg_.antenna.g_main; }
  double g_side() const noexcept { return cfg_.antenna.g_side; }

  double ue_gain() const noexcept { return ue_gain_; }
  double half_cone() const noexcept { return half_cone_; }  ///< phi_B / 2 [rad]
  double r_max() const noexcept { return r_max_; }          ///< +inf for ground

  double path_gain_ref(LinkType v) const noexcept { return v == LinkType::los ? a_los_ : a_nlos_; }
  double alpha(LinkType v) const noexcept {
    return v == LinkType::los ? cfg_.channel.alpha_los : cfg_.channel.alpha_nlos;
  }
  int fading_shape(LinkType v) const noexcept {
    return v == LinkType::los ? cfg_.channel.m_los : cfg_.channel.m_nlos;
  }

  /// sqrt(a b) / 1000: LoS-probability steps sit at integer multiples of its inverse.
  double los_step_rate() const noexcept { return los_rate_; }
  const LosProfile& los() const noexcept { return *los_; }

 private:
  ScenarioConfig cfg_;
  double lambda_m2_ = 0, p_tx_ = 0, n0_ = 0, a_los_ = 0, a_nlos_ = 0;
  double theta_b_ = 0, theta_t_ = 0, half_cone_ = 0, ue_gain_ = 1, r_max_ = kInf;
  double los_rate_ = 0;
  std::shared_ptr<const LosProfile> los_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double deg_to_rad(double deg) { return deg * 3.14159265358979323846 / 180.0; }

const char* to_string(LinkType v);
const char* to_string(UserKind k);

}  // namespace skycell
