#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsosec/assessment.hpp"

namespace fsosec {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// number formatting
//
// All text output goes through one fixed format so repeated runs are
// byte-identical. Decimal separator is '.', field separator is ','.

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// CSV
//
// Sweep CSV column order: variable,snr_main,snr_eve,cap_main,cap_eve,secrecy
// Assessment CSV prepends the series columns: series_param,series_value,...

inline void append_row_csv(std::string& out, double variable, const SecrecyResult& r) {
  out += format_number(variable);
  out += ',';
  out += format_number(r.snr_main);
  out += ',';
  out += format_number(r.snr_eve);
  out += ',';
  out += format_number(r.cap_main_bps_hz);
  out += ',';
  out += format_number(r.cap_eve_bps_hz);
  out += ',';
  out += format_number(r.secrecy_bps_hz);
  out += '\n';
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "variable,snr_main,snr_eve,cap_main,cap_eve,secrecy\n";
  for (const SweepRow& row : rows) append_row_csv(out, row.value, row.result);
  return out;
}

inline std::string report_to_csv(const AssessmentReport& report) {
  std::string out = "series_param,series_value,variable,snr_main,snr_eve,cap_main,cap_eve,secrecy\n";
  for (const AssessmentSeries& series : report.series)
    for (const SweepRow& row : series.rows) {
      out += series.parameter;
      out += ',';
      out += format_number(series.parameter_value);
      out += ',';
      append_row_csv(out, row.value, row.result);
    }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const SecrecyResult& r) {
  return json{{"snr_main", r.snr_main},
              {"snr_eve", r.snr_eve},
              {"cap_main", r.cap_main_bps_hz},
              {"cap_eve", r.cap_eve_bps_hz},
              {"secrecy", r.secrecy_bps_hz},
              {"main_breakdown_db",
               {{"attenuation", r.main_breakdown.attenuation_db},
                {"pointing", r.main_breakdown.pointing_db},
                {"path_loss", r.main_breakdown.path_loss_db}}},
              {"eve_breakdown_db",
               {{"attenuation", r.eve_breakdown.attenuation_db},
                {"pointing", r.eve_breakdown.pointing_db},
                {"path_loss", r.eve_breakdown.path_loss_db}}}};
}

inline json to_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const SweepRow& row : rows) {
    json entry = to_json(row.result);
    entry["variable"] = row.value;
    arr.push_back(std::move(entry));
  }
  return arr;
}

inline json to_json(const AssessmentReport& report) {
  json series = json::array();
  for (const AssessmentSeries& s : report.series) {
    json zero = json::array();
    for (const ZeroInterval& z : s.zero_regions) zero.push_back({z.begin, z.end});
    series.push_back({{"parameter", s.parameter},
                      {"value", s.parameter_value},
                      {"rows", to_json(s.rows)},
                      {"zero_regions", std::move(zero)}});
  }
  json out{{"assessment", report.which},
           {"scenario", report.scenario},
           {"variable", to_string(report.sweep.variable)},
           {"series", std::move(series)}};
  if (!report.saturation_deltas.empty()) out["saturation_deltas"] = report.saturation_deltas;
  return out;
}

inline json scenario_to_json(const Scenario& s) {
  json nodes = json::array();
  for (const NodeSpec& n : s.nodes)
    nodes.push_back({{"role", to_string(n.role)},
                     {"altitude_m", n.altitude_m},
                     {"gain_db", n.gain_db},
                     {"incline_deg", n.incline_deg}});
  json atmosphere{{"alpha_db_per_km", s.atmosphere.alpha_db_per_km}};
  if (s.atmosphere.visibility_km) atmosphere["visibility_km"] = *s.atmosphere.visibility_km;
  json geometry{{"distance_m", s.geometry.distance_m},
                {"pointing_error_rad", s.geometry.pointing_error_rad},
                {"beam_divergence_rad", s.geometry.beam_divergence_rad}};
  if (s.geometry.pointing_model == PointingModel::FixedDb)
    geometry["fixed_pointing_loss_db"] = s.geometry.fixed_pointing_loss_db;
  return json{{"scenario", s.name},
              {"budget",
               {{"tx_power_db", s.budget.tx_power_db},
                {"tx_gain_db", s.budget.tx_gain_db},
                {"rx_gain_db", s.budget.rx_gain_db},
                {"wavelength_m", s.budget.wavelength_m},
                {"noise_db", s.budget.noise_db}}},
              {"atmosphere", std::move(atmosphere)},
              {"geometry", std::move(geometry)},
              {"eavesdropper",
               {{"gain_db", s.eve.gain_db},
                {"distance_m", s.eve.distance_m},
                {"noise_db", s.eve.noise_db},
                {"profile", s.eve.profile.atmosphere ? "atmosphere-and-path-loss"
                                                     : "path-loss-only"}}},
              {"eve_offset_m", s.eve_offset_m},
              {"eve_tracks_main", s.eve_tracks_main},
              {"nodes", std::move(nodes)}};
}

// ---------------------------------------------------------------------------
// config files
//
// A scenario config is a JSON document with any subset of the documented
// sections; values present override the preset. An optional "sweep" block
// carries {variable, start, stop, step}.

inline void merge_scenario_config(Scenario& s, const json& doc) {
  auto num = [](const json& j, const char* key) { return j.at(key).get<double>(); };
  for (auto& [section, body] : doc.items()) {
    if (section == "scenario") {
      const auto name = body.get<std::string>();
      if (name != s.name)
        throw config_error("config is for scenario '" + name + "', not '" + s.name + "'");
    } else if (section == "budget" || section == "geometry" || section == "atmosphere") {
      for (auto& [key, value] : body.items())
        apply_override(s, section + "." + key, value.get<double>());
    } else if (section == "eavesdropper") {
      for (auto& [key, value] : body.items()) {
        if (key == "profile")
          s.eve.profile.atmosphere = value.get<std::string>() == "atmosphere-and-path-loss";
        else
          apply_override(s, "eavesdropper." + key, value.get<double>());
      }
    } else if (section == "eve_offset_m") {
      s.eve_offset_m = body.get<double>();
    } else if (section == "eve_tracks_main") {
      s.eve_tracks_main = body.get<bool>();
    } else if (section == "nodes" || section == "sweep") {
      // nodes are metadata; the sweep block is read by parse_sweep_config
    } else {
      throw config_error("unknown config section: " + section);
    }
  }
  (void)num;
}

inline SweepSpec parse_sweep_config(const json& doc) {
  if (!doc.contains("sweep")) throw config_error("config has no \"sweep\" block");
  const json& sweep = doc.at("sweep");
  SweepSpec spec;
  spec.variable = sweep_variable_from_string(sweep.at("variable").get<std::string>());
  spec.start = sweep.at("start").get<double>();
  spec.stop = sweep.at("stop").get<double>();
  spec.step = sweep.at("step").get<double>();
  return spec;
}

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(path.string() + ": " + e.what());
  }
}

/// Writes via a temporary file and renames into place, so a failed run
/// never leaves partial output.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fsosec
