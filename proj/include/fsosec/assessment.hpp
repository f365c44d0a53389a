#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fsosec/sweep.hpp"

namespace fsosec {

/// One curve of an assessment: the sweep re-run with one value of the
/// assessment's family parameter (alpha or eavesdropper gain).
struct AssessmentSeries {
  std::string parameter;
  double parameter_value = 0.0;
  std::vector<SweepRow> rows;
  std::vector<ZeroInterval> zero_regions;
};

struct AssessmentReport {
  int which = 0;
  std::string scenario;
  SweepSpec sweep;
  std::vector<AssessmentSeries> series;
  /// Assessment 3 only: |C_s at the top power grid point - C_s one step
  /// below|, one entry per series. Empty otherwise.
  std::vector<double> saturation_deltas;
};

namespace detail {

struct AssessmentPreset {
  Scenario base;
  SweepSpec sweep;
  std::string parameter;
  std::vector<double> parameter_values;
};

/// Power levels fitted once so the preset eavesdropper-position sweeps
/// produce non-degenerate curves; see the sweep module docs.
inline constexpr double kA2OrbitalTxPowerDb = 58.588663770752083;
inline constexpr double kA2AerialTxPowerDb = 207.58710818713507;

inline AssessmentPreset assessment_preset(int which, ScenarioKind kind) {
  const bool orbital = kind == ScenarioKind::Orbital;
  AssessmentPreset p;
  p.base = orbital ? scenario_leom_hapgs() : scenario_hapgs_lap();
  switch (which) {
    case 1:
      // receiver gain set equal to the transmitter gain in this assessment
      p.base.budget.rx_gain_db = p.base.budget.tx_gain_db;
      p.parameter = "alpha";
      if (orbital) {
        p.sweep = {SweepVariable::MainDistance, 200e3, 1400e3, 100e3};
        p.parameter_values = {1, 3, 5, 7};
      } else {
        p.sweep = {SweepVariable::MainDistance, 18500, 20000, 100};
        p.parameter_values = {10, 20, 30, 80};
      }
      break;
    case 2:
      p.parameter = "eve_gain";
      p.parameter_values = {30, 50, 70, 80};
      if (orbital) {
        p.base.budget.rx_gain_db = p.base.budget.tx_gain_db;
        p.base.budget.tx_power_db = kA2OrbitalTxPowerDb;
        p.base.atmosphere = AtmosphereSpec::from_alpha(0.0);
        p.base.geometry.distance_m = 700e3;
        p.sweep = {SweepVariable::EveDistance, 200e3, 1500e3, 100e3};
      } else {
        p.base.budget.tx_power_db = kA2AerialTxPowerDb;
        p.sweep = {SweepVariable::EveDistance, 0, 1600, 100};
      }
      break;
    case 3:
      p.parameter = "alpha";
      p.sweep = {SweepVariable::TxPower, 40, 110, 10};
      if (orbital) {
        p.base.eve.distance_m = 100e3;  // LEOE altitude baseline below LEOM
        p.parameter_values = {1, 3, 5, 7};
      } else {
        p.parameter_values = {10, 15, 20, 25};
      }
      break;
    default:
      throw config_error("assessment must be 1, 2 or 3");
  }
  return p;
}

}  // namespace detail

/// The scenario a given assessment starts from, before any user overrides.
inline Scenario assessment_scenario(int which, ScenarioKind kind) {
  return detail::assessment_preset(which, kind).base;
}

inline const SweepSpec assessment_sweep(int which, ScenarioKind kind) {
  return detail::assessment_preset(which, kind).sweep;
}

/// Runs the preset sweep family for one assessment. `configure` is applied
/// to the preset base scenario before the sweeps run (pass {} for none).
template <typename Configure>
AssessmentReport assessment_report(int which, ScenarioKind kind, Configure&& configure) {
  detail::AssessmentPreset preset = detail::assessment_preset(which, kind);
  configure(preset.base);

  AssessmentReport report;
  report.which = which;
  report.scenario = preset.base.name;
  report.sweep = preset.sweep;
  for (double value : preset.parameter_values) {
    Scenario s = preset.base;
    if (preset.parameter == "alpha")
      s.atmosphere = AtmosphereSpec::from_alpha(value);
    else
      s.eve.gain_db = value;
    AssessmentSeries series;
    series.parameter = preset.parameter;
    series.parameter_value = value;
    series.rows = run_sweep(s, preset.sweep);
    series.zero_regions = zero_secrecy_region(series.rows);
    report.series.push_back(std::move(series));
  }
  if (which == 3) {
    for (const AssessmentSeries& series : report.series) {
      const auto n = series.rows.size();
      report.saturation_deltas.push_back(
          std::abs(series.rows[n - 1].result.secrecy_bps_hz -
                   series.rows[n - 2].result.secrecy_bps_hz));
    }
  }
  return report;
}

inline AssessmentReport assessment_report(int which, ScenarioKind kind) {
  return assessment_report(which, kind, [](Scenario&) {});
}

}  // namespace fsosec
