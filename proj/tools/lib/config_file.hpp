#pragma once

#include <map>
#include <string>
#include <string_view>

#include "skycell/monte_carlo.hpp"
#include "skycell/scenario.hpp"

namespace skycell::cli {

/// Everything a config file can set: the scenario plus an optional
/// per-BS randomization used by the Monte Carlo engine.
struct RunConfig {
  ScenarioConfig scenario = reference_drone_config();
  RandomizationSpec randomization;
};

/// Parses `key = value` lines. `[section]` headers prefix subsequent keys
/// with `section.`; `#` and `;` start comments. Unknown keys, malformed
/// numbers and duplicates raise ConfigError naming the dotted key. The
/// result is validated.
RunConfig parse_config(std::string_view text, std::string_view origin = "<config>");
RunConfig load_config(const std::string& path);

/// Sets one dotted key on `cfg`; shared by the file parser and sweeps.
void set_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Every key with its resolved value, printed with round-trip precision.
std::map<std::string, std::string> resolved_values(const RunConfig& cfg);

/// Canonical config text; parse_config(to_text(c)) reproduces c exactly.
std::string to_text(const RunConfig& cfg);

/// Validates the scenario and the randomization ranges.
void validate_run_config(const RunConfig& cfg);

}  // namespace skycell::cli
