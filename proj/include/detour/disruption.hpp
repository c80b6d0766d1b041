#pragma once

#include <set>
#include <string>
#include <vector>

#include "detour/errors.hpp"
#include "detour/geo.hpp"
#include "detour/json_util.hpp"
#include "detour/network.hpp"

namespace detour {

using DangerZone = BoundingBox;

// User-declared disruption, phrased in names as a scenario author writes them.
struct DisruptionSpec {
  std::set<std::string> disabled_lines;    // line labels
  std::set<std::string> avoided_stations;  // station names
  std::vector<DangerZone> danger_zones;

  bool empty() const { return disabled_lines.empty() && avoided_stations.empty() && danger_zones.empty(); }
  friend bool operator==(const DisruptionSpec&, const DisruptionSpec&) = default;
};

// A disruption resolved against one network.
struct EffectiveConstraints {
  std::set<std::string> forbidden_stations;  // station ids
  std::set<std::string> disabled_lines;      // line ids

  bool station_forbidden(const std::string& id) const { return forbidden_stations.contains(id); }
  bool line_disabled(const std::string& id) const { return disabled_lines.contains(id); }
  friend bool operator==(const EffectiveConstraints&, const EffectiveConstraints&) = default;
};

inline EffectiveConstraints compile(const TransitNetwork& net, const DisruptionSpec& spec) {
  EffectiveConstraints out;
  for (const auto& name : spec.avoided_stations) {
    try {
      out.forbidden_stations.insert(resolve_station(net, name));
    } catch (const NotFound&) {
      throw UnknownStation("avoided station '" + name + "' is not in the network");
    }
  }
  for (const auto& zone : spec.danger_zones) {
    auto inside = stations_in_zone(net, zone);
    out.forbidden_stations.insert(inside.begin(), inside.end());
  }
  for (const auto& label : spec.disabled_lines) {
    const std::string key = normalize_name(label);
    bool found = false;
    for (const auto& line : net.lines()) {
      if (normalize_name(line.label) == key) {
        out.disabled_lines.insert(line.id);
        found = true;
      }
    }
    if (!found) throw UnknownLine("no line labeled '" + label + "'");
  }
  return out;
}

inline DangerZone danger_zone_from_json(const json& j, const std::string& where) {
  detail::require_only_keys(j, {"min_lat", "min_lon", "max_lat", "max_lon"}, where);
  DangerZone z{detail::require_number(j, "min_lat", where), detail::require_number(j, "min_lon", where),
               detail::require_number(j, "max_lat", where), detail::require_number(j, "max_lon", where)};
  if (!z.well_formed()) throw InvalidZone(where + ": min greater than max");
  return z;
}

inline DisruptionSpec disruption_from_json(const json& j, const std::string& where = "disruption") {
  detail::require_only_keys(j, {"disabled_lines", "avoided_stations", "danger_zones"}, where);
  DisruptionSpec spec;
  auto strings = [&](const char* key, std::set<std::string>& into) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array()) throw SchemaError(where + ": '" + key + "' must be an array");
    for (const auto& v : *it) {
      if (!v.is_string()) throw SchemaError(where + ": '" + key + "' entries must be strings");
      into.insert(v.get<std::string>());
    }
  };
  strings("disabled_lines", spec.disabled_lines);
  strings("avoided_stations", spec.avoided_stations);
  if (auto it = j.find("danger_zones"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(where + ": 'danger_zones' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.danger_zones.push_back(danger_zone_from_json((*it)[i], where + ".danger_zones[" + std::to_string(i) + "]"));
    }
  }
  return spec;
}

inline json disruption_to_json(const DisruptionSpec& spec) {
  json zones = json::array();
  for (const auto& z : spec.danger_zones) {
    zones.push_back({{"min_lat", z.min_lat}, {"min_lon", z.min_lon}, {"max_lat", z.max_lat}, {"max_lon", z.max_lon}});
  }
  return {{"disabled_lines", spec.disabled_lines},
          {"avoided_stations", spec.avoided_stations},
          {"danger_zones", std::move(zones)}};
}

}  // namespace detour
