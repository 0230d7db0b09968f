#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config_file.hpp"
#include "runs.hpp"

namespace skycell::cli {

/// Everything needed to regenerate one CSV.
struct Manifest {
  std::string command;  ///< ccdf | sweep | interference
  std::map<std::string, std::string> config;
  std::vector<std::string> engines;
  std::string param;  ///< sweep only
  std::string grid;
  bool grid_given = false;  ///< false: the command's default grid was used
  std::size_t mc_n = kDefaultMcN;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const Manifest& m, const std::string& path);
Manifest read_manifest(const std::string& path);

/// Rebuilds the run configuration stored in a manifest.
RunConfig config_from_manifest(const Manifest& m);

}  // namespace skycell::cli
