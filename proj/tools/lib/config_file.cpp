#include "config_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

namespace skycell::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return -kInf;
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "not an integer: '" + text + "'");
  return v;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

Field number(double ScenarioConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) { c.scenario.*member = parse_double(k, v); },
          [member](const RunConfig& c) { return format_double(c.scenario.*member); }};
}

template <class Sub, class T>
Field nested(Sub ScenarioConfig::*sub, T Sub::*member) {
  return {[sub, member](RunConfig& c, const std::string& k, const std::string& v) {
            if constexpr (std::is_same_v<T, int>) {
              c.scenario.*sub.*member = parse_int(k, v);
            } else {
              c.scenario.*sub.*member = parse_double(k, v);
            }
          },
          [sub, member](const RunConfig& c) {
            if constexpr (std::is_same_v<T, int>) {
              return std::to_string(c.scenario.*sub.*member);
            } else {
              return format_double(c.scenario.*sub.*member);
            }
          }};
}

Field range_end(std::optional<Interval> RandomizationSpec::*range, bool upper) {
  return {[range, upper](RunConfig& c, const std::string& k, const std::string& v) {
            auto& r = c.randomization.*range;
            if (!r) r = Interval{kInf, -kInf};
            (upper ? r->hi : r->lo) = parse_double(k, v);
          },
          [range, upper](const RunConfig& c) {
            const auto& r = c.randomization.*range;
            return r ? format_double(upper ? r->hi : r->lo) : std::string("none");
          }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    t["lambda_bs"] = number(&ScenarioConfig::lambda_bs);
    t["p_tx_db"] = number(&ScenarioConfig::p_tx_db);
    t["n0_db"] = number(&ScenarioConfig::n0_db);
    t["threshold_t"] = number(&ScenarioConfig::threshold_t);
    t["environment.a"] = nested(&ScenarioConfig::environment, &EnvironmentParams::a);
    t["environment.b"] = nested(&ScenarioConfig::environment, &EnvironmentParams::b);
    t["environment.c"] = nested(&ScenarioConfig::environment, &EnvironmentParams::c);
    t["channel.alpha_los"] = nested(&ScenarioConfig::channel, &ChannelParams::alpha_los);
    t["channel.alpha_nlos"] = nested(&ScenarioConfig::channel, &ChannelParams::alpha_nlos);
    t["channel.a_los_db"] = nested(&ScenarioConfig::channel, &ChannelParams::a_los_db);
    t["channel.a_nlos_db"] = nested(&ScenarioConfig::channel, &ChannelParams::a_nlos_db);
    t["channel.m_los"] = nested(&ScenarioConfig::channel, &ChannelParams::m_los);
    t["channel.m_nlos"] = nested(&ScenarioConfig::channel, &ChannelParams::m_nlos);
    t["antenna.theta_b_deg"] = nested(&ScenarioConfig::antenna, &BsAntenna::theta_b_deg);
    t["antenna.theta_t_deg"] = nested(&ScenarioConfig::antenna, &BsAntenna::theta_t_deg);
    t["antenna.g_main"] = nested(&ScenarioConfig::antenna, &BsAntenna::g_main);
    t["antenna.g_side"] = nested(&ScenarioConfig::antenna, &BsAntenna::g_side);
    t["antenna.h_bs"] = nested(&ScenarioConfig::antenna, &BsAntenna::h_bs);
    t["user.h_d"] = nested(&ScenarioConfig::user, &UserTerminal::h_d);
    t["user.phi_b_deg"] = nested(&ScenarioConfig::user, &UserTerminal::phi_b_deg);
    t["user.kind"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                        if (v == "drone") {
                          c.scenario.user.kind = UserKind::drone;
                        } else if (v == "ground") {
                          c.scenario.user.kind = UserKind::ground;
                          c.scenario.user.h_d = 0.0;
                        } else {
                          throw ConfigError(k, "expected 'drone' or 'ground', got '" + v + "'");
                        }
                      },
                      [](const RunConfig& c) { return std::string(to_string(c.scenario.user.kind)); }};
    t["randomization.h_bs_min"] = range_end(&RandomizationSpec::h_bs_range, false);
    t["randomization.h_bs_max"] = range_end(&RandomizationSpec::h_bs_range, true);
    t["randomization.theta_t_min_deg"] = range_end(&RandomizationSpec::theta_t_range_deg, false);
    t["randomization.theta_t_max_deg"] = range_end(&RandomizationSpec::theta_t_range_deg, true);
    return t;
  }();
  return table;
}

void check_range(const std::optional<Interval>& r, const std::string& prefix, const std::string& unit) {
  if (!r) return;
  if (!std::isfinite(r->lo)) throw ConfigError(prefix + "_min" + unit, "missing or not finite");
  if (!std::isfinite(r->hi)) throw ConfigError(prefix + "_max" + unit, "missing or not finite");
  if (r->lo > r->hi) throw ConfigError(prefix + "_min" + unit, "must not exceed the upper bound");
}

}  // namespace

void set_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& t = fields();
  const auto it = t.find(key);
  if (it == t.end()) throw ConfigError(key, "unknown key");
  if (value == "none" && key.rfind("randomization.", 0) == 0) {
    if (key.find("h_bs") != std::string::npos) cfg.randomization.h_bs_range.reset();
    else cfg.randomization.theta_t_range_deg.reset();
    return;
  }
  it->second.set(cfg, key, value);
}

void validate_run_config(const RunConfig& cfg) {
  validate(cfg.scenario);
  check_range(cfg.randomization.h_bs_range, "randomization.h_bs", "");
  check_range(cfg.randomization.theta_t_range_deg, "randomization.theta_t", "_deg");
  if (const auto& r = cfg.randomization.h_bs_range) {
    if (r->lo < 0.0) throw ConfigError("randomization.h_bs_min", "must be >= 0");
    if (cfg.scenario.user.kind == UserKind::drone && !(r->hi < cfg.scenario.user.h_d)) {
      throw ConfigError("randomization.h_bs_max", "must stay below user.h_d");
    }
  }
}

RunConfig parse_config(std::string_view text, std::string_view origin) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  const std::string where(origin);

  // user.kind first so that kind-dependent defaults never override explicit keys.
  std::vector<std::pair<std::string, std::string>> entries;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find_first_of("#;"));
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ":" + std::to_string(line_no), "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ":" + std::to_string(line_no), "expected 'key = value'");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    if (value.empty()) throw ConfigError(key, "empty value");
    entries.emplace_back(std::move(key), value);
  }
  std::stable_partition(entries.begin(), entries.end(), [](const auto& e) { return e.first == "user.kind"; });
  for (const auto& [key, value] : entries) set_value(cfg, key, value);
  validate_run_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::map<std::string, std::string> resolved_values(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& [key, field] : fields()) out[key] = field.get(cfg);
  return out;
}

std::string to_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : resolved_values(cfg)) {
    if (key == "user.kind") out.insert(0, key + " = " + value + "\n");
    else out += key + " = " + value + "\n";
  }
  return out;
}

}  // namespace skycell::cli
