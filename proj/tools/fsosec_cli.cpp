// fsosec -- link-budget, secrecy-capacity and traceability-registry CLI.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 domain error in a
// computation (message names the offending grid point), 4 registry
// validation failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsosec/fsosec.hpp"

namespace fs = std::filesystem;
using namespace fsosec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitValidation = 4;

fs::path data_dir() {
  if (const char* env = std::getenv("FSOSEC_DATA_DIR")) return env;
#ifdef FSOSEC_DEFAULT_DATA_DIR
  return FSOSEC_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

ScenarioKind kind_from_name(const std::string& name) {
  if (name == "orbital") return ScenarioKind::Orbital;
  if (name == "aerial") return ScenarioKind::Aerial;
  throw config_error("scenario must be 'orbital' or 'aerial', got '" + name + "'");
}

Scenario base_scenario(const std::string& name) {
  return kind_from_name(name) == ScenarioKind::Orbital ? scenario_leom_hapgs()
                                                       : scenario_hapgs_lap();
}

void apply_set_options(Scenario& s, const std::vector<std::string>& sets) {
  for (const std::string& entry : sets) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw config_error("--set expects key=value, got '" + entry + "'");
    double value;
    try {
      value = std::stod(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw config_error("--set " + entry + ": value is not a number");
    }
    apply_override(s, entry.substr(0, eq), value);
  }
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty())
    std::cout << content;
  else
    write_file_atomic(output_path, content);
}

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string output_path;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file with scenario overrides");
  cmd->add_option("--set", opts.sets, "Override a scenario value, key=value (repeatable)");
  cmd->add_option("-o,--output", opts.output_path, "Output file (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

TraceRegistry load_registry_file(const std::string& registry_path) {
  const fs::path path =
      registry_path.empty() ? data_dir() / "registry.json" : fs::path(registry_path);
  std::ifstream in(path);
  if (!in) throw config_error("cannot open registry file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_registry(buffer.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-space optical link secrecy toolkit"};
  app.require_subcommand(1);
  app.allow_extras(false);

  // --- sweep ---------------------------------------------------------------
  CommonOpts sweep_opts;
  std::string sweep_scenario = "orbital";
  std::string sweep_variable;
  double sweep_start = 0, sweep_stop = 0, sweep_step = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a scenario over a parameter grid");
  sweep_cmd->add_option("--scenario", sweep_scenario, "Base scenario: orbital or aerial");
  sweep_cmd->add_option("--variable", sweep_variable,
                        "Swept variable: main_distance, eve_distance, eve_gain, tx_power, alpha");
  sweep_cmd->add_option("--start", sweep_start, "Grid start (m, dB or dB/km)");
  sweep_cmd->add_option("--stop", sweep_stop, "Grid stop, inclusive");
  sweep_cmd->add_option("--step", sweep_step, "Grid step, > 0");
  add_common(sweep_cmd, sweep_opts);

  // --- assess --------------------------------------------------------------
  CommonOpts assess_opts;
  int assess_which = 0;
  std::string assess_scenario;
  auto* assess_cmd = app.add_subcommand("assess", "Run one of the three preset assessments");
  assess_cmd->add_option("which", assess_which, "Assessment number: 1, 2 or 3")->required();
  assess_cmd->add_option("scenario", assess_scenario, "orbital or aerial")->required();
  add_common(assess_cmd, assess_opts);

  // --- scenario ------------------------------------------------------------
  CommonOpts scenario_opts;
  std::string scenario_name;
  auto* scenario_cmd =
      app.add_subcommand("scenario", "Print a fully-resolved scenario configuration");
  scenario_cmd->add_option("name", scenario_name, "orbital or aerial")->required();
  scenario_cmd->add_option("--config", scenario_opts.config_path, "JSON config overrides");
  scenario_cmd->add_option("--set", scenario_opts.sets, "Override key=value (repeatable)");
  scenario_cmd->add_option("-o,--output", scenario_opts.output_path, "Output file");

  // --- registry-validate ---------------------------------------------------
  std::string registry_path;
  std::string registry_format = "text";
  auto* validate_cmd =
      app.add_subcommand("registry-validate", "Validate threat -> protection traceability");
  validate_cmd->add_option("--registry", registry_path, "Registry JSON file");
  validate_cmd->add_option("--format", registry_format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  // --- registry-query ------------------------------------------------------
  std::string query_registry_path, query_threat, query_element;
  bool query_coverage = false;
  auto* query_cmd = app.add_subcommand("registry-query", "Query the traceability registry");
  query_cmd->add_option("--registry", query_registry_path, "Registry JSON file");
  query_cmd->add_option("--threat", query_threat, "List protections mapped to a threat id");
  query_cmd->add_option("--element", query_element, "List threats targeting an element");
  query_cmd->add_flag("--coverage", query_coverage, "Print the per-element coverage report");

  // --- export --------------------------------------------------------------
  CommonOpts export_opts;
  int export_which = 0;
  std::string export_scenario, export_dir;
  auto* export_cmd =
      app.add_subcommand("export", "Write per-series plot-data CSV files for an assessment");
  export_cmd->add_option("which", export_which, "Assessment number: 1, 2 or 3")->required();
  export_cmd->add_option("scenario", export_scenario, "orbital or aerial")->required();
  export_cmd->add_option("--out-dir", export_dir, "Directory for the CSV files")->required();
  export_cmd->add_option("--config", export_opts.config_path, "JSON config overrides");
  export_cmd->add_option("--set", export_opts.sets, "Override key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sweep_cmd->parsed()) {
      Scenario s = base_scenario(sweep_scenario);
      std::optional<SweepSpec> spec;
      if (!sweep_opts.config_path.empty()) {
        const json doc = load_json_file(sweep_opts.config_path);
        merge_scenario_config(s, doc);
        if (doc.contains("sweep")) spec = parse_sweep_config(doc);
      }
      apply_set_options(s, sweep_opts.sets);
      if (!sweep_variable.empty()) {
        spec = SweepSpec{sweep_variable_from_string(sweep_variable), sweep_start, sweep_stop,
                         sweep_step};
      }
      if (!spec) throw config_error("no sweep given: pass --variable/--start/--stop/--step "
                                    "or a config file with a \"sweep\" block");
      const std::vector<SweepRow> rows = run_sweep(s, *spec);
      emit(sweep_opts.format == "json" ? to_json(rows).dump(2) + "\n" : sweep_to_csv(rows),
           sweep_opts.output_path);
      return kExitOk;
    }

    if (assess_cmd->parsed()) {
      const ScenarioKind kind = kind_from_name(assess_scenario);
      std::optional<json> config;
      if (!assess_opts.config_path.empty()) config = load_json_file(assess_opts.config_path);
      const AssessmentReport report =
          assessment_report(assess_which, kind, [&](Scenario& s) {
            if (config) merge_scenario_config(s, *config);
            apply_set_options(s, assess_opts.sets);
          });
      emit(assess_opts.format == "json" ? to_json(report).dump(2) + "\n"
                                        : report_to_csv(report),
           assess_opts.output_path);
      return kExitOk;
    }

    if (scenario_cmd->parsed()) {
      Scenario s = base_scenario(scenario_name);
      if (!scenario_opts.config_path.empty())
        merge_scenario_config(s, load_json_file(scenario_opts.config_path));
      apply_set_options(s, scenario_opts.sets);
      emit(scenario_to_json(s).dump(2) + "\n", scenario_opts.output_path);
      return kExitOk;
    }

    if (validate_cmd->parsed()) {
      TraceRegistry registry;
      try {
        registry = load_registry_file(registry_path);
      } catch (const registry_error& e) {
        std::cout << "FAIL\n  error: " << e.what() << "\n";
        return kExitValidation;
      }
      const ValidationReport report = validate_traceability(registry);
      if (registry_format == "json") {
        std::cout << to_json(report).dump(2) << "\n";
      } else {
        std::cout << (report.passed ? "PASS" : "FAIL") << " ("
                  << report.error_count() << " errors, "
                  << report.findings.size() - report.error_count() << " informational)\n";
        for (const Finding& f : report.findings)
          std::cout << "  " << (f.severity == Finding::Severity::Error ? "error" : "info")
                    << ": " << f.subject << ": " << f.message << "\n";
      }
      return report.passed ? kExitOk : kExitValidation;
    }

    if (query_cmd->parsed()) {
      const TraceRegistry registry = load_registry_file(query_registry_path);
      if (query_coverage) {
        std::cout << to_json(coverage_report(registry)).dump(2) << "\n";
      } else if (!query_threat.empty()) {
        for (const ProtectionTechnique& p : protections_for(registry, query_threat))
          std::cout << p.id << "," << p.name << "," << to_string(p.kind) << "\n";
      } else if (!query_element.empty()) {
        for (const ThreatTechnique& t : threats_for_element(registry, query_element))
          std::cout << t.id << "," << to_string(t.domain) << "," << t.name << "\n";
      } else {
        throw config_error("registry-query needs --threat, --element or --coverage");
      }
      return kExitOk;
    }

    if (export_cmd->parsed()) {
      const ScenarioKind kind = kind_from_name(export_scenario);
      std::optional<json> config;
      if (!export_opts.config_path.empty()) config = load_json_file(export_opts.config_path);
      const AssessmentReport report =
          assessment_report(export_which, kind, [&](Scenario& s) {
            if (config) merge_scenario_config(s, *config);
            apply_set_options(s, export_opts.sets);
          });
      fs::create_directories(export_dir);
      for (const AssessmentSeries& series : report.series) {
        std::string name = "assess" + std::to_string(report.which) + "_" + report.scenario +
                           "_" + series.parameter + "_" + format_number(series.parameter_value) +
                           ".csv";
        const fs::path path = fs::path(export_dir) / name;
        write_file_atomic(path, sweep_to_csv(series.rows));
        std::cout << path.string() << "\n";
      }
      return kExitOk;
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
