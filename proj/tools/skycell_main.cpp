#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config_file.hpp"
#include "manifest.hpp"
#include "runs.hpp"
#include "skycell/quadrature.hpp"
#include "skycell/version.hpp"

namespace {

using namespace skycell;
using namespace skycell::cli;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string config_path;
  std::string out;
  std::string manifest_path;
  std::uint64_t seed = kDefaultSeed;
  std::size_t mc_n = kDefaultMcN;
  std::string engines;
  std::string param;
  std::string grid;
  bool grid_given = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : parse_grid(SweepParameter::threshold, text)) out.push_back(p.value);
  return out;
}

RunConfig load(const Options& o) {
  return o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
}

void emit(const CsvTable& table, const Manifest& manifest, const Options& o) {
  for (const auto& n : manifest.notes) std::cerr << "note: " << n << '\n';
  if (o.out.empty() || o.out == "-") {
    table.write(std::cout);
    return;
  }
  table.write_file(o.out);
  write_manifest(manifest, o.manifest_path.empty() ? o.out + ".manifest.json" : o.manifest_path);
}

Manifest base_manifest(const std::string& command, const RunConfig& cfg, const Options& o,
                       const std::vector<Engine>& engines) {
  Manifest m;
  m.command = command;
  m.config = resolved_values(cfg);
  for (Engine e : engines) m.engines.emplace_back(engine_name(e));
  m.param = o.param;
  m.grid = o.grid;
  m.grid_given = o.grid_given;
  m.mc_n = o.mc_n;
  m.seed = o.seed;
  m.output = o.out;
  return m;
}

RunSettings settings_for(const Options& o, const std::string& default_engines) {
  RunSettings s;
  for (const auto& name : split_list(o.engines.empty() ? default_engines : o.engines)) {
    s.engines.push_back(parse_engine(name));
  }
  if (s.engines.empty()) throw ConfigError("--engines", "no engine selected");
  s.mc_n = o.mc_n;
  s.seed = o.seed;
  return s;
}

void run_ccdf_command(const RunConfig& cfg, const Options& o) {
  const RunSettings s = settings_for(o, "analytic,theorem2,mc");
  const auto grid = o.grid_given ? parse_values(o.grid) : default_ccdf_grid_db();
  RunNotes notes;
  const auto rows = run_ccdf(cfg, grid, s, &notes);
  Manifest m = base_manifest("ccdf", cfg, o, s.engines);
  m.notes = notes.notes;
  emit(ccdf_table(rows), m, o);
}

void run_sweep_command(const RunConfig& cfg, const Options& o) {
  if (o.param.empty()) throw ConfigError("--param", "required for sweep");
  SweepSpec spec;
  spec.parameter = parse_sweep_parameter(o.param);
  spec.grid = parse_grid(spec.parameter, o.grid);
  spec.settings = settings_for(o, "analytic");
  RunNotes notes;
  const auto rows = run_sweep(spec, cfg, &notes);
  Manifest m = base_manifest("sweep", cfg, o, spec.settings.engines);
  m.notes = notes.notes;
  emit(sweep_table(spec.parameter, rows), m, o);
}

void run_interference_command(const RunConfig& cfg, const Options& o) {
  const RunSettings s = settings_for(o, "analytic,mc");
  const auto rows = run_interference_profile(cfg, parse_values(o.grid_given ? o.grid : "50,75,100,150,200"), s);
  emit(interference_table(rows), base_manifest("interference", cfg, o, s.engines), o);
}

void dispatch(const std::string& command, const RunConfig& cfg, const Options& o) {
  if (command == "ccdf") return run_ccdf_command(cfg, o);
  if (command == "sweep") return run_sweep_command(cfg, o);
  if (command == "interference") return run_interference_command(cfg, o);
  throw ConfigError("command", "unknown command '" + command + "'");
}

void add_run_flags(CLI::App* sub, Options& o, bool with_param) {
  sub->add_option("--config", o.config_path, "Scenario file (key = value)")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "CSV output path; '-' or omitted writes to stdout");
  sub->add_option("--manifest", o.manifest_path, "Manifest path (default: <out>.manifest.json)");
  sub->add_option("--seed", o.seed, "Monte Carlo seed");
  sub->add_option("--mc-n", o.mc_n, "Monte Carlo realizations");
  sub->add_option("--engines", o.engines, "Comma list of analytic, theorem2, mc");
  sub->add_option("--grid", o.grid, "Comma list of grid values")->each([&o](const std::string&) {
    o.grid_given = true;
  });
  if (with_param) sub->add_option("--param", o.param, "Sweep parameter")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage of ground and drone users in a Poisson cellular network"};
  app.set_version_flag("--version", std::string("skycell ") + kVersion);
  app.require_subcommand(1);

  Options o;
  std::string manifest_in;
  auto* ccdf = app.add_subcommand("ccdf", "SINR CCDF (thresholds in dB)");
  add_run_flags(ccdf, o, false);
  auto* sweep = app.add_subcommand("sweep", "Coverage over a parameter grid");
  add_run_flags(sweep, o, true);
  auto* interference = app.add_subcommand("interference", "Mean interference versus drone altitude");
  add_run_flags(interference, o, false);
  auto* validate_cmd = app.add_subcommand("validate", "Validate a config and print the resolved values");
  validate_cmd->add_option("--config", o.config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  auto* replay = app.add_subcommand("replay", "Regenerate a CSV from its manifest");
  replay->add_option("--manifest", manifest_in, "Manifest written by a previous run")->required();
  replay->add_option("--out", o.out, "CSV output path; defaults to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (validate_cmd->parsed()) {
      std::cout << to_text(load(o));
      return kExitOk;
    }
    if (replay->parsed()) {
      const Manifest m = read_manifest(manifest_in);
      Options r;
      r.out = o.out;
      r.manifest_path = o.out.empty() ? std::string() : o.out + ".manifest.json";
      r.seed = m.seed;
      r.mc_n = m.mc_n;
      r.param = m.param;
      r.grid = m.grid;
      r.grid_given = m.grid_given;
      for (std::size_t i = 0; i < m.engines.size(); ++i) r.engines += (i ? "," : "") + m.engines[i];
      dispatch(m.command, config_from_manifest(m), r);
      return kExitOk;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    dispatch(command, load(o), o);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
