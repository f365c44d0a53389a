#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsosec/secrecy.hpp"

namespace fsosec {

/// Configuration problems (bad keys, malformed files, invalid grids).
/// Distinct from std::domain_error, which covers physically invalid values.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NodeRole { LEOM, LEOE, HAPGS, LAP, LAPSE };

inline std::string to_string(NodeRole role) {
  switch (role) {
    case NodeRole::LEOM: return "LEOM";
    case NodeRole::LEOE: return "LEOE";
    case NodeRole::HAPGS: return "HAPGS";
    case NodeRole::LAP: return "LAP";
    case NodeRole::LAPSE: return "LAPSE";
  }
  throw std::logic_error("unknown NodeRole");
}

/// Node metadata. Altitudes and incline angles only seed default link
/// distances; sweeps always vary slant distance directly.
struct NodeSpec {
  NodeRole role;
  double altitude_m = 0.0;
  double gain_db = 0.0;
  double incline_deg = 0.0;
};

enum class ScenarioKind { Orbital, Aerial };

/// A fully-resolved link-pair configuration: legitimate channel, adversary
/// channel and the bookkeeping needed to sweep either one.
struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Orbital;
  LinkBudget budget;
  AtmosphereSpec atmosphere;
  LinkGeometry geometry;
  EavesdropperSpec eve;
  /// Signed eavesdropper offset applied when a main-distance sweep drags
  /// the eavesdropper along (d_e = d + offset).
  double eve_offset_m = 0.0;
  bool eve_tracks_main = true;
  std::vector<NodeSpec> nodes;

  SecrecyResult evaluate() const {
    return evaluate_link_pair(budget, geometry, atmosphere, eve);
  }
};

/// LEOM -> HAPGS downlink with an orbital interceptor (path loss only).
/// Distances default to the vertical altitude baselines.
inline Scenario scenario_leom_hapgs() {
  Scenario s;
  s.name = "orbital";
  s.kind = ScenarioKind::Orbital;
  s.budget = LinkBudget{0.0, 42.1, 52.1, 1550e-9, -130.0};
  s.atmosphere = AtmosphereSpec::from_alpha(1.0);
  s.geometry = LinkGeometry{680e3, 1e-6, 20e-6};
  s.eve = EavesdropperSpec{52.1, 580e3, -130.0, EveImpairmentProfile::path_loss_only()};
  s.eve_offset_m = -100e3;
  s.eve_tracks_main = true;
  s.nodes = {
      {NodeRole::LEOM, 700e3, 42.1, 55.0},
      {NodeRole::LEOE, 600e3, 52.1, 0.0},
      {NodeRole::HAPGS, 20e3, 52.1, 0.0},
  };
  return s;
}

/// HAPGS -> LAP downlink with an aerial interceptor that sits inside the
/// attenuating medium (atmosphere + path loss).
inline Scenario scenario_hapgs_lap() {
  Scenario s;
  s.name = "aerial";
  s.kind = ScenarioKind::Aerial;
  s.budget = LinkBudget{0.0, 42.1, 52.1, 1550e-9, -130.0};
  s.atmosphere = AtmosphereSpec::from_alpha(10.0);
  s.geometry = LinkGeometry{19850.0, 1e-6, 20e-6};
  s.eve = EavesdropperSpec{52.1, 19000.0, -130.0,
                           EveImpairmentProfile::atmosphere_and_path_loss()};
  s.eve_offset_m = -100.0;
  s.eve_tracks_main = true;
  s.nodes = {
      {NodeRole::HAPGS, 20e3, 42.1, 0.0},
      {NodeRole::LAP, 150.0, 52.1, 25.0},
      {NodeRole::LAPSE, 1000.0, 52.1, 0.0},
  };
  return s;
}

/// Applies one key=value override. Keys are the documented dotted config
/// paths ("budget.tx_power_db") or their short aliases ("tx_power").
inline void apply_override(Scenario& s, const std::string& key, double value) {
  auto is = [&](const char* full, const char* alias = nullptr) {
    return key == full || (alias && key == alias);
  };
  if (is("budget.tx_power_db", "tx_power")) s.budget.tx_power_db = value;
  else if (is("budget.tx_gain_db", "tx_gain")) s.budget.tx_gain_db = value;
  else if (is("budget.rx_gain_db", "rx_gain")) s.budget.rx_gain_db = value;
  else if (is("budget.wavelength_m", "wavelength")) s.budget.wavelength_m = value;
  else if (is("budget.noise_db", "noise")) s.budget.noise_db = value;
  else if (is("atmosphere.alpha_db_per_km", "alpha"))
    s.atmosphere = AtmosphereSpec::from_alpha(value);
  else if (is("atmosphere.visibility_km", "visibility"))
    s.atmosphere = AtmosphereSpec::from_visibility(value, s.budget.wavelength_m);
  else if (is("geometry.distance_m", "distance")) s.geometry.distance_m = value;
  else if (is("geometry.pointing_error_rad", "theta")) s.geometry.pointing_error_rad = value;
  else if (is("geometry.beam_divergence_rad", "theta_div"))
    s.geometry.beam_divergence_rad = value;
  else if (is("geometry.fixed_pointing_loss_db")) {
    s.geometry.pointing_model = PointingModel::FixedDb;
    s.geometry.fixed_pointing_loss_db = value;
  } else if (is("eavesdropper.gain_db", "eve_gain")) s.eve.gain_db = value;
  else if (is("eavesdropper.distance_m", "eve_distance")) s.eve.distance_m = value;
  else if (is("eavesdropper.noise_db", "eve_noise")) s.eve.noise_db = value;
  else if (is("eavesdropper.atmosphere", "eve_atmosphere"))
    s.eve.profile.atmosphere = value != 0.0;
  else if (is("eve_offset_m", "eve_offset")) s.eve_offset_m = value;
  else if (is("eve_tracks_main")) s.eve_tracks_main = value != 0.0;
  else
    throw config_error("unknown override key: " + key);
}

/// Maps an eavesdropper sweep position to a transmitter separation.
/// Orbital: positions run along the main-link axis with the transmitter at
/// the far end of the link, so d_e = |pos - d_main|. Aerial: positions are
/// climb offsets toward the transmitter, so d_e = d_e0 - pos. Either way
/// the separation is floored at the 1 m co-location limit.
inline double eve_position_to_distance(const Scenario& s, double position_m) {
  double d;
  if (s.kind == ScenarioKind::Orbital)
    d = std::abs(position_m - s.geometry.distance_m);
  else
    d = s.eve.distance_m - position_m;
  if (d < kMinEveDistanceM) {
    if (s.kind == ScenarioKind::Aerial && d < 0.0)
      throw std::domain_error("eve position beyond the transmitter");
    d = kMinEveDistanceM;
  }
  return d;
}

}  // namespace fsosec
