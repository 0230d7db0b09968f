#include "manifest.hpp"

#include <fstream>

#include "skycell/version.hpp"

namespace skycell::cli {

nlohmann::json to_json(const Manifest& m) {
  nlohmann::json j;
  j["tool"] = "skycell";
  j["version"] = kVersion;
  j["command"] = m.command;
  j["config"] = m.config;
  j["engines"] = m.engines;
  if (!m.param.empty()) j["param"] = m.param;
  if (m.grid_given) j["grid"] = m.grid;
  j["mc_n"] = m.mc_n;
  j["seed"] = m.seed;
  j["output"] = m.output;
  j["notes"] = m.notes;
  return j;
}

Manifest manifest_from_json(const nlohmann::json& j) {
  try {
    Manifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.engines = j.at("engines").get<std::vector<std::string>>();
    m.param = j.value("param", std::string());
    m.grid_given = j.contains("grid");
    m.grid = j.value("grid", std::string());
    m.mc_n = j.at("mc_n").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.output = j.value("output", std::string());
    m.notes = j.value("notes", std::vector<std::string>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("--manifest", e.what());
  }
}

void write_manifest(const Manifest& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << to_json(m).dump(2) << '\n';
}

Manifest read_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--manifest", "cannot open '" + path + "'");
  try {
    return manifest_from_json(nlohmann::json::parse(f));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("--manifest", e.what());
  }
}

RunConfig config_from_manifest(const Manifest& m) {
  RunConfig cfg;
  if (const auto it = m.config.find("user.kind"); it != m.config.end()) set_value(cfg, it->first, it->second);
  for (const auto& [key, value] : m.config) {
    if (key != "user.kind") set_value(cfg, key, value);
  }
  validate_run_config(cfg);
  return cfg;
}

}  // namespace skycell::cli
