#include "runs.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "skycell/analytic.hpp"
#include "skycell/monte_carlo.hpp"

namespace skycell::cli {

namespace {

double parse_number(const std::string& field, std::string text) {
  text.erase(0, text.find_first_not_of(" \t"));
  text.erase(text.find_last_not_of(" \t") + 1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) throw ConfigError(field, "not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool drops_engine(Engine e, const RunConfig& cfg, RunNotes* notes) {
  if (e == Engine::theorem2 && cfg.scenario.user.kind != UserKind::drone) {
    if (notes) notes->notes.emplace_back("theorem2 applies to drone users only; skipped for a ground user");
    return true;
  }
  return false;
}

void note_randomization(const RunConfig& cfg, const RunSettings& settings, RunNotes* notes) {
  if (!notes || !cfg.randomization.active()) return;
  const bool analytic = std::any_of(settings.engines.begin(), settings.engines.end(),
                                    [](Engine e) { return e != Engine::monte_carlo; });
  if (analytic) notes->notes.emplace_back("randomization applies to mc only; analytic engines use the fixed antenna values");
}

double analytic_value(Engine e, const Scenario& sc) {
  return e == Engine::theorem2 ? drone_coverage_approx(sc).probability : coverage_probability(sc).probability;
}

}  // namespace

Engine parse_engine(const std::string& name) {
  if (name == "analytic") return Engine::analytic;
  if (name == "theorem2") return Engine::theorem2;
  if (name == "mc" || name == "monte_carlo") return Engine::monte_carlo;
  throw ConfigError("--engines", "unknown engine '" + name + "'");
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::theorem2: return "theorem2";
    case Engine::monte_carlo: return "mc";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  static const std::map<std::string, SweepParameter> names = {
      {"bs_height", SweepParameter::bs_height},
      {"drone_altitude", SweepParameter::drone_altitude},
      {"beamwidth_phi", SweepParameter::beamwidth_phi},
      {"density_lambda", SweepParameter::density_lambda},
      {"threshold", SweepParameter::threshold},
      {"bs_density_and_height", SweepParameter::bs_density_and_height},
  };
  const auto it = names.find(name);
  if (it == names.end()) throw ConfigError("--param", "unknown sweep parameter '" + name + "'");
  return it->second;
}

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::bs_height: return "bs_height";
    case SweepParameter::drone_altitude: return "drone_altitude";
    case SweepParameter::beamwidth_phi: return "beamwidth_phi";
    case SweepParameter::density_lambda: return "density_lambda";
    case SweepParameter::threshold: return "threshold";
    case SweepParameter::bs_density_and_height: return "bs_density_and_height";
  }
  return "?";
}

std::vector<double> default_ccdf_grid_db() {
  std::vector<double> g;
  for (int db = -10; db <= 20; db += 2) g.push_back(db);
  return g;
}

std::vector<CcdfRow> run_ccdf(const RunConfig& cfg, const std::vector<double>& thresholds_db,
                              const RunSettings& settings, RunNotes* notes) {
  if (thresholds_db.empty()) throw ConfigError("--grid", "threshold grid is empty");
  if (!std::is_sorted(thresholds_db.begin(), thresholds_db.end())) {
    throw ConfigError("--grid", "thresholds must be ascending");
  }
  if (settings.mc_n == 0) throw ConfigError("--mc-n", "must be >= 1");
  validate_run_config(cfg);
  note_randomization(cfg, settings, notes);

  std::vector<CcdfRow> rows;
  for (Engine e : settings.engines) {
    if (drops_engine(e, cfg, notes)) continue;
    if (e == Engine::monte_carlo) {
      std::vector<double> linear;
      for (double db : thresholds_db) linear.push_back(db_to_linear(db));
      const Scenario sc(cfg.scenario);
      const CcdfCurve curve = estimate_ccdf(sc, cfg.randomization, linear, settings.mc_n, settings.seed);
      for (std::size_t i = 0; i < linear.size(); ++i) {
        rows.push_back({thresholds_db[i], e, curve.values[i], curve.std_errors[i]});
      }
      continue;
    }
    for (double db : thresholds_db) {
      ScenarioConfig sc_cfg = cfg.scenario;
      sc_cfg.threshold_t = db_to_linear(db);
      rows.push_back({db, e, analytic_value(e, Scenario(sc_cfg)), std::nullopt});
    }
  }
  return rows;
}

CsvTable ccdf_table(const std::vector<CcdfRow>& rows) {
  CsvTable t({"threshold_db", "engine", "value", "stderr"});
  for (const auto& r : rows) {
    t.add_row({format_cell(r.threshold_db), engine_name(r.engine), format_cell(r.value), format_cell(r.std_error)});
  }
  return t;
}

std::vector<GridPoint> parse_grid(SweepParameter p, const std::string& text) {
  std::vector<GridPoint> grid;
  if (text.find_first_not_of(" \t,") == std::string::npos) throw ConfigError("--grid", "grid is empty");
  for (const auto& item : split(text, ',')) {
    if (p == SweepParameter::bs_density_and_height) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw ConfigError("--grid", "expected 'lambda:h_bs', got '" + item + "'");
      grid.push_back({parse_number("--grid", parts[1]), parse_number("--grid", parts[0])});
    } else {
      grid.push_back({parse_number("--grid", item), std::nullopt});
    }
  }
  return grid;
}

RunConfig apply_point(const RunConfig& base, SweepParameter p, const GridPoint& point) {
  RunConfig cfg = base;
  auto& sc = cfg.scenario;
  switch (p) {
    case SweepParameter::bs_height: sc.antenna.h_bs = point.value; break;
    case SweepParameter::drone_altitude:
      if (sc.user.kind != UserKind::drone) throw ConfigError("user.kind", "drone_altitude sweeps need a drone user");
      sc.user.h_d = point.value;
      break;
    case SweepParameter::beamwidth_phi:
      if (sc.user.kind != UserKind::drone) throw ConfigError("user.kind", "beamwidth_phi sweeps need a drone user");
      sc.user.phi_b_deg = point.value;
      break;
    case SweepParameter::density_lambda: sc.lambda_bs = point.value; break;
    case SweepParameter::threshold: sc.threshold_t = db_to_linear(point.value); break;
    case SweepParameter::bs_density_and_height:
      if (!point.secondary) throw ConfigError("--grid", "bs_density_and_height needs 'lambda:h_bs' points");
      sc.lambda_bs = *point.secondary;
      sc.antenna.h_bs = point.value;
      break;
  }
  validate_run_config(cfg);
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RunConfig& base, RunNotes* notes) {
  if (spec.grid.empty()) throw ConfigError("--grid", "grid is empty");
  if (spec.settings.mc_n == 0) throw ConfigError("--mc-n", "must be >= 1");
  std::vector<RunConfig> configs;
  for (const auto& point : spec.grid) configs.push_back(apply_point(base, spec.parameter, point));
  note_randomization(base, spec.settings, notes);

  std::vector<Engine> engines;
  for (Engine e : spec.settings.engines) {
    if (!drops_engine(e, base, notes)) engines.push_back(e);
  }

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const Scenario sc(configs[i].scenario);
    for (Engine e : engines) {
      SweepRow row{spec.grid[i], e, 0.0, std::nullopt, false};
      if (e == Engine::monte_carlo) {
        const McEstimate est = estimate_coverage(sc, configs[i].randomization, spec.settings.mc_n, spec.settings.seed);
        row.coverage = est.mean;
        row.std_error = est.std_error;
      } else {
        row.coverage = analytic_value(e, sc);
      }
      rows.push_back(row);
    }
  }

  // First maximum wins within each (engine, secondary) group.
  std::map<std::pair<int, double>, std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::pair<int, double> key{static_cast<int>(rows[i].engine), rows[i].point.secondary.value_or(0.0)};
    const auto it = best.find(key);
    if (it == best.end() || rows[i].coverage > rows[it->second].coverage) best[key] = i;
  }
  for (const auto& [key, idx] : best) rows[idx].argmax = true;
  return rows;
}

CsvTable sweep_table(SweepParameter p, const std::vector<SweepRow>& rows) {
  CsvTable t({"parameter", "value", "secondary", "engine", "coverage", "stderr", "argmax"});
  for (const auto& r : rows) {
    t.add_row({sweep_parameter_name(p), format_cell(r.point.value), format_cell(r.point.secondary),
               engine_name(r.engine), format_cell(r.coverage), format_cell(r.std_error), r.argmax ? "1" : "0"});
  }
  return t;
}

std::vector<InterferenceRow> run_interference_profile(const RunConfig& base, const std::vector<double>& altitudes,
                                                      const RunSettings& settings) {
  if (base.scenario.user.kind != UserKind::drone) {
    throw ConfigError("user.kind", "the interference profile needs a drone user");
  }
  if (altitudes.empty()) throw ConfigError("--grid", "altitude grid is empty");
  if (settings.mc_n == 0) throw ConfigError("--mc-n", "must be >= 1");
  std::vector<RunConfig> configs;
  for (double h : altitudes) configs.push_back(apply_point(base, SweepParameter::drone_altitude, {h, std::nullopt}));

  const bool analytic = std::any_of(settings.engines.begin(), settings.engines.end(),
                                    [](Engine e) { return e != Engine::monte_carlo; });
  const bool mc = std::find(settings.engines.begin(), settings.engines.end(), Engine::monte_carlo) !=
                  settings.engines.end();

  std::vector<InterferenceRow> rows;
  for (std::size_t i = 0; i < altitudes.size(); ++i) {
    const Scenario sc(configs[i].scenario);
    InterferenceRow row;
    row.h_d = altitudes[i];
    if (analytic) {
      const ServingSummary summary = serving_summary(sc);
      row.mean_serving_distance = summary.mean_distance;
      row.analytic_mean = summary.mean_interference;
      if (summary.mass > 0.0) {
        const ServingContext ctx = make_serving(summary.mean_distance, LinkType::los, sc);
        row.analytic_conditional = mean_conditional_interference(ctx, sc);
      }
    }
    if (mc) {
      const ServingStats st = serving_stats(sc, configs[i].randomization, settings.mc_n, settings.seed);
      row.mc_mean = st.mean_interference;
      row.mc_std_error = st.interference_std_error;
      if (!analytic) row.mean_serving_distance = st.mean_serving_distance;
    }
    rows.push_back(row);
  }
  return rows;
}

CsvTable interference_table(const std::vector<InterferenceRow>& rows) {
  CsvTable t({"h_d", "mean_serving_distance", "analytic_conditional", "analytic_mean", "mc_mean", "mc_stderr"});
  for (const auto& r : rows) {
    t.add_row({format_cell(r.h_d), format_cell(r.mean_serving_distance), format_cell(r.analytic_conditional),
               format_cell(r.analytic_mean), format_cell(r.mc_mean), format_cell(r.mc_std_error)});
  }
  return t;
}

}  // namespace skycell::cli
