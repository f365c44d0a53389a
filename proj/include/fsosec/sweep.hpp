#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fsosec/scenario.hpp"

namespace fsosec {

enum class SweepVariable { MainDistance, EveDistance, EveGain, TxPower, Alpha };

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::MainDistance: return "main_distance";
    case SweepVariable::EveDistance: return "eve_distance";
    case SweepVariable::EveGain: return "eve_gain";
    case SweepVariable::TxPower: return "tx_power";
    case SweepVariable::Alpha: return "alpha";
  }
  throw std::logic_error("unknown SweepVariable");
}

inline SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "main_distance") return SweepVariable::MainDistance;
  if (name == "eve_distance") return SweepVariable::EveDistance;
  if (name == "eve_gain") return SweepVariable::EveGain;
  if (name == "tx_power") return SweepVariable::TxPower;
  if (name == "alpha") return SweepVariable::Alpha;
  throw config_error("unknown sweep variable: " + name);
}

/// An inclusive arithmetic grid over one scenario variable. Distances are
/// in metres, gains/powers in dB, alpha in dB/km.
struct SweepSpec {
  SweepVariable variable = SweepVariable::MainDistance;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> grid() const {
    if (!(step > 0.0)) throw config_error("sweep step must be > 0");
    if (!(stop >= start)) throw config_error("sweep range is empty");
    std::vector<double> values;
    const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
    return values;
  }
};

struct SweepRow {
  double value = 0.0;
  SecrecyResult result;
};

/// Applies a grid value to a scenario copy. A main-distance sweep drags a
/// tracking eavesdropper along at the configured offset; an eve-distance
/// sweep is interpreted as an eavesdropper position (see
/// eve_position_to_distance).
inline Scenario at_grid_point(const Scenario& base, SweepVariable variable, double value) {
  Scenario s = base;
  switch (variable) {
    case SweepVariable::MainDistance:
      s.geometry.distance_m = value;
      if (s.eve_tracks_main) s.eve.distance_m = value + s.eve_offset_m;
      break;
    case SweepVariable::EveDistance:
      s.eve.distance_m = eve_position_to_distance(base, value);
      break;
    case SweepVariable::EveGain:
      s.eve.gain_db = value;
      break;
    case SweepVariable::TxPower:
      s.budget.tx_power_db = value;
      break;
    case SweepVariable::Alpha:
      s.atmosphere = AtmosphereSpec::from_alpha(value);
      break;
  }
  return s;
}

/// Evaluates the scenario over the grid. Deterministic: identical inputs
/// give bit-identical rows, in ascending grid order.
inline std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  for (double value : spec.grid()) {
    try {
      rows.push_back({value, at_grid_point(scenario, spec.variable, value).evaluate()});
    } catch (const std::domain_error& e) {
      throw std::domain_error("at " + to_string(spec.variable) + " = " +
                              std::to_string(value) + ": " + e.what());
    }
  }
  return rows;
}

struct ZeroInterval {
  double begin = 0.0;
  double end = 0.0;
  friend bool operator==(const ZeroInterval&, const ZeroInterval&) = default;
};

/// Maximal contiguous runs of rows whose secrecy capacity is exactly zero
/// (the clamp produces exact zeros). Endpoints are at grid resolution.
inline std::vector<ZeroInterval> zero_secrecy_region(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw config_error("zero_secrecy_region: empty sweep");
  std::vector<ZeroInterval> intervals;
  bool open = false;
  for (const SweepRow& row : rows) {
    if (row.result.secrecy_bps_hz == 0.0) {
      if (!open) {
        intervals.push_back({row.value, row.value});
        open = true;
      } else {
        intervals.back().end = row.value;
      }
    } else {
      open = false;
    }
  }
  return intervals;
}

}  // namespace fsosec
