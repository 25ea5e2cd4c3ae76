#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rankone/criteria.hpp"
#include "rankone/oracle.hpp"
#include "rankone/scan.hpp"
#include "rankone/stress.hpp"

namespace rankone {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Finite numbers as numbers, the rest as "inf", "-inf" or "nan".
inline Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline Json to_json(const Witness& w) {
  Json j = Json::object();
  for (const auto& [name, value] : w) j[name] = json_number(value);
  return j;
}

inline Json to_json(const ConditionReport& r) {
  Json j;
  j["id"] = to_string(r.id);
  j["verdict"] = to_string(r.verdict);
  j["worst_margin"] = json_number(r.worst_margin);
  j["witness"] = to_json(r.witness);
  j["samples"] = r.samples_used;
  j["tolerance"] = r.tolerance;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline Json to_json(const InfimumResult& r) {
  Json j;
  j["value"] = json_number(r.value);
  j["attained_at"] = r.attained_at;
  j["limit"] = to_string(r.limit);
  j["unbounded"] = r.unbounded;
  Json history = Json::array();
  for (const auto& [points, best] : r.margin_history) history.push_back({{"points", points}, {"best", best}});
  j["margin_history"] = history;
  return j;
}

inline Json to_json(const SplitEnergy& e) {
  Json j;
  j["name"] = e.name;
  j["h"] = e.h.source();
  j["f"] = e.f.source();
  j["catalog"] = e.catalog_id ? Json(to_string(*e.catalog_id)) : Json(nullptr);
  Json params = Json::object();
  for (const auto& [k, v] : e.params) params[k] = v;
  j["params"] = params;
  return j;
}

inline Json to_json(const ConvexityResult& c) {
  return {{"verdict", to_string(c.kind)}, {"witness", c.witness}, {"min_second", json_number(c.min_second)}};
}

/// Report document shared by all subcommands: energy, route, conditions, overall.
inline Json verdict_json(const SplitEnergy& e, const RankOneVerdict& v) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["energy"] = to_json(e);
  j["route"] = to_string(v.route);
  Json conditions = Json::array();
  for (const auto& r : v.reports) conditions.push_back(to_json(r));
  j["conditions"] = conditions;
  j["overall"] = to_string(v.overall);
  if (v.h0) j["h0"] = to_json(*v.h0);
  if (v.f0) j["f0"] = to_json(*v.f0);
  return j;
}

inline std::string format_witness(const Witness& w) {
  std::string out;
  for (const auto& [name, value] : w) {
    if (!out.empty()) out += ", ";
    out += name + " = " + detail::format_g9(value);
  }
  return out;
}

inline void print_text(std::ostream& os, const SplitEnergy& e, const RankOneVerdict& v) {
  os << "energy: " << e.name << "\n  h(t) = " << e.h.source() << "\n  f(z) = " << e.f.source() << "\n";
  os << "route: " << to_string(v.route) << "\n";
  if (v.h0) {
    os << "h0 = " << detail::format_g9(v.h0->value) << " at t = " << detail::format_g9(v.h0->attained_at) << " ("
       << to_string(v.h0->limit) << ")\n";
  }
  if (v.f0) {
    os << "f0 = " << detail::format_g9(v.f0->value) << " at z = " << detail::format_g9(v.f0->attained_at) << " ("
       << to_string(v.f0->limit) << ")\n";
  }
  for (const auto& r : v.reports) {
    os << "  " << to_string(r.id) << ": " << to_string(r.verdict) << "  worst " << detail::format_g9(r.worst_margin)
       << " at " << format_witness(r.witness) << "  (" << r.samples_used << " samples)";
    if (!r.detail.empty()) os << "  " << r.detail;
    os << "\n";
  }
  os << "overall: " << to_string(v.overall) << "\n";
}

}  // namespace rankone
