#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsosec/scenario.hpp"  // config_error

namespace fsosec {

struct registry_error : config_error {
  using config_error::config_error;
};

enum class TtcFunction { Command, Telemetry, Tracking };

inline std::string to_string(TtcFunction f) {
  switch (f) {
    case TtcFunction::Command: return "Command";
    case TtcFunction::Telemetry: return "Telemetry";
    case TtcFunction::Tracking: return "Tracking";
  }
  throw std::logic_error("unknown TtcFunction");
}

inline TtcFunction ttc_function_from_string(const std::string& s) {
  if (s == "Command") return TtcFunction::Command;
  if (s == "Telemetry") return TtcFunction::Telemetry;
  if (s == "Tracking") return TtcFunction::Tracking;
  throw registry_error("unknown TT&C function: " + s);
}

enum class ThreatDomain { Cyber, Environmental };

inline std::string to_string(ThreatDomain d) {
  return d == ThreatDomain::Cyber ? "cyber" : "environmental";
}

/// Catalog countermeasures are imported SPARTA entries; "introduced"
/// protections (PRO-*) originate in this registry's own threat model.
enum class ProtectionKind { SpartaCountermeasure, Introduced };

inline std::string to_string(ProtectionKind k) {
  return k == ProtectionKind::SpartaCountermeasure ? "sparta-countermeasure" : "introduced";
}

struct TtcLink {
  std::string direction;
  TtcFunction function = TtcFunction::Command;
  std::string description;
  friend bool operator==(const TtcLink&, const TtcLink&) = default;
};

struct ThreatTechnique {
  std::string id;
  ThreatDomain domain = ThreatDomain::Cyber;
  std::string name;
  std::string target_element;
  friend bool operator==(const ThreatTechnique&, const ThreatTechnique&) = default;
};

struct ProtectionTechnique {
  std::string id;
  std::string name;
  ProtectionKind kind = ProtectionKind::SpartaCountermeasure;
  friend bool operator==(const ProtectionTechnique&, const ProtectionTechnique&) = default;
};

struct TraceRegistry {
  int schema_version = 1;
  std::vector<std::string> elements;
  std::vector<TtcLink> links;
  std::vector<ThreatTechnique> threats;
  std::vector<ProtectionTechnique> protections;
  std::map<std::string, std::vector<std::string>> mappings;  // threat id -> protection ids
  std::map<std::string, std::vector<std::string>> secure_blocks;  // element -> SHALL texts
  friend bool operator==(const TraceRegistry&, const TraceRegistry&) = default;

  const ThreatTechnique* find_threat(const std::string& id) const {
    for (const ThreatTechnique& t : threats)
      if (t.id == id) return &t;
    return nullptr;
  }
  const ProtectionTechnique* find_protection(const std::string& id) const {
    for (const ProtectionTechnique& p : protections)
      if (p.id == id) return &p;
    return nullptr;
  }
  bool has_element(const std::string& element) const {
    return std::find(elements.begin(), elements.end(), element) != elements.end();
  }
};

struct Finding {
  enum class Severity { Error, Info };
  Severity severity = Severity::Error;
  std::string subject;
  std::string message;
  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Finding> findings;

  std::size_t error_count() const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
          return f.severity == Finding::Severity::Error;
        }));
  }
};

// ---------------------------------------------------------------------------
// loading / serialization

namespace detail {

inline void check_unique_ids(const TraceRegistry& r) {
  std::vector<std::string> seen;
  for (const ThreatTechnique& t : r.threats) {
    if (std::find(seen.begin(), seen.end(), t.id) != seen.end())
      throw registry_error("duplicate threat id: " + t.id);
    seen.push_back(t.id);
  }
  seen.clear();
  for (const ProtectionTechnique& p : r.protections) {
    if (std::find(seen.begin(), seen.end(), p.id) != seen.end())
      throw registry_error("duplicate protection id: " + p.id);
    seen.push_back(p.id);
  }
  std::vector<std::pair<std::string, TtcFunction>> pairs;
  for (const TtcLink& l : r.links) {
    auto key = std::make_pair(l.direction, l.function);
    if (std::find(pairs.begin(), pairs.end(), key) != pairs.end())
      throw registry_error("duplicate link entry: " + l.direction + " / " +
                           to_string(l.function));
    pairs.push_back(std::move(key));
  }
}

inline void check_domain_prefixes(const TraceRegistry& r) {
  for (const ThreatTechnique& t : r.threats) {
    const bool environmental = t.id.rfind("NAT-", 0) == 0;
    if (environmental != (t.domain == ThreatDomain::Environmental))
      throw registry_error("threat " + t.id + ": NAT-* ids are environmental, "
                           "catalog-style ids are cyber");
  }
}

}  // namespace detail

inline TraceRegistry parse_registry(const nlohmann::ordered_json& doc) {
  TraceRegistry r;
  r.schema_version = doc.value("schema_version", 1);
  if (r.schema_version != 1)
    throw registry_error("unsupported schema_version " + std::to_string(r.schema_version));
  for (const auto& e : doc.value("elements", nlohmann::ordered_json::array()))
    r.elements.push_back(e.get<std::string>());
  for (const auto& l : doc.value("links", nlohmann::ordered_json::array()))
    r.links.push_back({l.at("direction").get<std::string>(),
                       ttc_function_from_string(l.at("function").get<std::string>()),
                       l.value("description", std::string{})});
  for (const auto& t : doc.value("threats", nlohmann::ordered_json::array())) {
    const auto domain = t.at("domain").get<std::string>();
    if (domain != "cyber" && domain != "environmental")
      throw registry_error("threat domain must be cyber or environmental, got " + domain);
    r.threats.push_back({t.at("id").get<std::string>(),
                         domain == "cyber" ? ThreatDomain::Cyber : ThreatDomain::Environmental,
                         t.at("name").get<std::string>(),
                         t.at("target_element").get<std::string>()});
  }
  for (const auto& p : doc.value("protections", nlohmann::ordered_json::array())) {
    const auto kind = p.at("kind").get<std::string>();
    if (kind != "sparta-countermeasure" && kind != "introduced")
      throw registry_error("protection kind must be sparta-countermeasure or introduced");
    r.protections.push_back({p.at("id").get<std::string>(), p.at("name").get<std::string>(),
                             kind == "introduced" ? ProtectionKind::Introduced
                                                  : ProtectionKind::SpartaCountermeasure});
  }
  if (doc.contains("mappings"))
    for (const auto& [threat, list] : doc.at("mappings").items()) {
      std::vector<std::string> ids;
      for (const auto& id : list) ids.push_back(id.get<std::string>());
      r.mappings.emplace(threat, std::move(ids));
    }
  if (doc.contains("secure_blocks"))
    for (const auto& [element, texts] : doc.at("secure_blocks").items()) {
      std::vector<std::string> list;
      for (const auto& t : texts) list.push_back(t.get<std::string>());
      r.secure_blocks.emplace(element, std::move(list));
    }
  detail::check_unique_ids(r);
  detail::check_domain_prefixes(r);
  return r;
}

/// Strict load: throws on parse errors (with location), duplicate ids and
/// mapping endpoints that resolve to no declared id.
inline TraceRegistry load_registry(const std::string& document) {
  if (document.find_first_not_of(" \t\r\n") == std::string::npos) return TraceRegistry{};
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw registry_error(std::string("registry parse error: ") + e.what());
  }
  TraceRegistry r = parse_registry(doc);
  for (const auto& [threat, protections] : r.mappings) {
    if (!r.find_threat(threat))
      throw registry_error("dangling id: mapping for undeclared threat " + threat);
    for (const std::string& id : protections)
      if (!r.find_protection(id))
        throw registry_error("dangling id: " + threat + " maps to undeclared " + id);
  }
  return r;
}

inline nlohmann::ordered_json registry_to_json(const TraceRegistry& r) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = r.schema_version;
  doc["elements"] = r.elements;
  doc["links"] = nlohmann::ordered_json::array();
  for (const TtcLink& l : r.links)
    doc["links"].push_back({{"direction", l.direction},
                            {"function", to_string(l.function)},
                            {"description", l.description}});
  doc["threats"] = nlohmann::ordered_json::array();
  for (const ThreatTechnique& t : r.threats)
    doc["threats"].push_back({{"id", t.id},
                              {"domain", to_string(t.domain)},
                              {"name", t.name},
                              {"target_element", t.target_element}});
  doc["protections"] = nlohmann::ordered_json::array();
  for (const ProtectionTechnique& p : r.protections)
    doc["protections"].push_back(
        {{"id", p.id}, {"name", p.name}, {"kind", to_string(p.kind)}});
  doc["mappings"] = nlohmann::ordered_json::object();
  for (const auto& [threat, protections] : r.mappings) doc["mappings"][threat] = protections;
  doc["secure_blocks"] = nlohmann::ordered_json::object();
  for (const auto& [element, texts] : r.secure_blocks) doc["secure_blocks"][element] = texts;
  return doc;
}

inline std::string serialize_registry(const TraceRegistry& r) {
  return registry_to_json(r).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// queries

/// All threats targeting one declared technical element, in registry order.
inline std::vector<ThreatTechnique> threats_for_element(const TraceRegistry& r,
                                                        const std::string& element) {
  if (!r.has_element(element))
    throw registry_error("unknown technical element: " + element);
  std::vector<ThreatTechnique> out;
  for (const ThreatTechnique& t : r.threats)
    if (t.target_element == element) out.push_back(t);
  return out;
}

inline std::vector<ProtectionTechnique> protections_for(const TraceRegistry& r,
                                                        const std::string& threat_id) {
  if (!r.find_threat(threat_id))
    throw registry_error("unknown threat id: " + threat_id);
  std::vector<ProtectionTechnique> out;
  auto it = r.mappings.find(threat_id);
  if (it == r.mappings.end()) return out;
  for (const std::string& id : it->second) {
    const ProtectionTechnique* p = r.find_protection(id);
    if (p) out.push_back(*p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// validation and coverage

/// Fails iff some threat lacks a protection, some mapping endpoint dangles,
/// or a threat targets an undeclared element. An unused protection is only
/// an informational finding.
inline ValidationReport validate_traceability(const TraceRegistry& r) {
  ValidationReport report;
  auto error = [&](std::string subject, std::string message) {
    report.findings.push_back({Finding::Severity::Error, std::move(subject), std::move(message)});
  };
  for (const ThreatTechnique& t : r.threats) {
    if (!r.has_element(t.target_element))
      error(t.id, "targets undeclared element '" + t.target_element + "'");
    auto it = r.mappings.find(t.id);
    if (it == r.mappings.end() || it->second.empty())
      error(t.id, "has no protection technique mapped");
  }
  for (const auto& [threat, protections] : r.mappings) {
    if (!r.find_threat(threat)) error(threat, "mapping for undeclared threat");
    for (const std::string& id : protections)
      if (!r.find_protection(id)) error(threat, "maps to undeclared protection " + id);
  }
  std::vector<std::string> used;
  for (const auto& [threat, protections] : r.mappings)
    used.insert(used.end(), protections.begin(), protections.end());
  for (const ProtectionTechnique& p : r.protections)
    if (std::find(used.begin(), used.end(), p.id) == used.end())
      report.findings.push_back(
          {Finding::Severity::Info, p.id, "protection is not used by any mapping"});
  report.passed = report.error_count() == 0;
  return report;
}

struct ElementCoverage {
  std::string element;
  std::size_t cyber_threats = 0;
  std::size_t environmental_threats = 0;
  std::size_t protections = 0;  // distinct protections mapped from this element's threats
  friend bool operator==(const ElementCoverage&, const ElementCoverage&) = default;
};

struct CoverageReport {
  std::vector<ElementCoverage> per_element;
  std::size_t total_threats = 0;
  std::size_t total_protections = 0;
  std::vector<std::string> unmapped_threats;
};

inline CoverageReport coverage_report(const TraceRegistry& r) {
  CoverageReport report;
  report.total_threats = r.threats.size();
  report.total_protections = r.protections.size();
  for (const std::string& element : r.elements) {
    ElementCoverage cov;
    cov.element = element;
    std::vector<std::string> distinct;
    for (const ThreatTechnique& t : r.threats) {
      if (t.target_element != element) continue;
      (t.domain == ThreatDomain::Cyber ? cov.cyber_threats : cov.environmental_threats)++;
      auto it = r.mappings.find(t.id);
      if (it != r.mappings.end())
        for (const std::string& id : it->second)
          if (std::find(distinct.begin(), distinct.end(), id) == distinct.end())
            distinct.push_back(id);
    }
    cov.protections = distinct.size();
    report.per_element.push_back(std::move(cov));
  }
  for (const ThreatTechnique& t : r.threats) {
    auto it = r.mappings.find(t.id);
    if (it == r.mappings.end() || it->second.empty()) report.unmapped_threats.push_back(t.id);
  }
  return report;
}

inline nlohmann::ordered_json to_json(const ValidationReport& report) {
  nlohmann::ordered_json findings = nlohmann::ordered_json::array();
  for (const Finding& f : report.findings)
    findings.push_back({{"severity", f.severity == Finding::Severity::Error ? "error" : "info"},
                        {"subject", f.subject},
                        {"message", f.message}});
  return {{"passed", report.passed}, {"findings", std::move(findings)}};
}

inline nlohmann::ordered_json to_json(const CoverageReport& report) {
  nlohmann::ordered_json per_element = nlohmann::ordered_json::array();
  for (const ElementCoverage& cov : report.per_element)
    per_element.push_back({{"element", cov.element},
                           {"cyber_threats", cov.cyber_threats},
                           {"environmental_threats", cov.environmental_threats},
                           {"protections", cov.protections}});
  return {{"per_element", std::move(per_element)},
          {"total_threats", report.total_threats},
          {"total_protections", report.total_protections},
          {"unmapped_threats", report.unmapped_threats}};
}

}  // namespace fsosec
