#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detour/depart_time.hpp"
#include "detour/disruption.hpp"
#include "detour/json_util.hpp"
#include "detour/network.hpp"
#include "detour/route.hpp"

namespace detour {

// Per-segment travel time source. Implementations must tolerate concurrent
// estimate() calls.
class TravelTimeProvider {
 public:
  virtual ~TravelTimeProvider() = default;

  // Seconds for one leg, or nullopt when the provider cannot answer.
  virtual std::optional<double> estimate(std::string_view mode_term, const std::optional<std::string>& line_label,
                                         std::string_view from_id, std::string_view to_id,
                                         const DepartTime& depart) const = 0;
};

// Estimates from the network itself: scheduled hop times for rides, walking
// time for walks, a nominal cycling speed for bike legs.
class NetworkTravelTimeProvider final : public TravelTimeProvider {
 public:
  explicit NetworkTravelTimeProvider(const TransitNetwork& net, double bike_speed_mps = 4.0)
      : net_(net), bike_speed_mps_(bike_speed_mps) {}

  std::optional<double> estimate(std::string_view mode_term, const std::optional<std::string>& line_label,
                                 std::string_view from_id, std::string_view to_id,
                                 const DepartTime& /*depart*/) const override {
    if (mode_term == "walk") return walk_time(net_, from_id, to_id);
    if (line_label) {
      for (const Line* line : net_.lines_labeled(mode_term, *line_label)) {
        try {
          return segment_seconds(*line, from_id, to_id);
        } catch (const Error&) {
        }
      }
    }
    if (mode_term == "bike") {
      return haversine_m(net_.station(from_id).location, net_.station(to_id).location) / bike_speed_mps_;
    }
    return std::nullopt;
  }

 private:
  const TransitNetwork& net_;
  double bike_speed_mps_;
};

struct ConnectivityResult {
  bool connected = true;
  std::vector<bool> per_leg;
};

struct AvoidanceResult {
  bool avoided = true;
  std::vector<std::string> offenders;  // station and line ids, first hit order
};

struct MetricsReport {
  bool connected = false;
  std::vector<bool> per_leg_connectivity;
  bool avoided = false;
  std::vector<std::string> offenders;
  double travel_time_s = 0.0;
  double normalized_time = 1.0;
  int transfers = 0;
  bool format_violation = false;
  std::optional<ViolationReason> violation_reason;
  bool valid = false;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

namespace metrics_detail {

inline std::optional<std::string> resolve_exact(const TransitNetwork& net, std::string_view name) {
  auto ids = net.stations_named(normalize_name(name));
  if (ids.size() != 1) return std::nullopt;
  return ids.front();
}

// Ambiguous names fall back to the smallest candidate id.
inline std::optional<std::string> resolve_best_effort(const TransitNetwork& net, std::string_view name) {
  auto ids = net.stations_named(normalize_name(name));
  if (ids.empty()) return std::nullopt;
  return ids.front();
}

inline bool within_threshold(const TransitNetwork& net, const LatLon& p, bool need_bikes) {
  return std::any_of(net.bike_stations().begin(), net.bike_stations().end(), [&](const BikeStation& b) {
    return (!need_bikes || b.bikes_available > 0) && haversine_m(p, b.location) <= net.walk_link_threshold_m();
  });
}

struct LegAnalysis {
  std::optional<std::string> from_id;
  std::optional<std::string> to_id;
  bool connected = false;
  std::vector<std::string> expansion;  // ride stations for connected ride legs
};

inline LegAnalysis analyze_leg(const TransitNetwork& net, const Leg& leg) {
  LegAnalysis a;
  a.from_id = resolve_exact(net, leg.from);
  a.to_id = resolve_exact(net, leg.to);
  if (!a.from_id || !a.to_id) return a;
  if (leg.mode == "walk") {
    a.connected = true;
  } else if (leg.mode == "bike") {
    a.connected = within_threshold(net, net.station(*a.from_id).location, /*need_bikes=*/true) &&
                  within_threshold(net, net.station(*a.to_id).location, /*need_bikes=*/false);
  } else if (leg.line) {
    for (const Line* line : net.lines_labeled(leg.mode, *leg.line)) {
      try {
        a.expansion = line_segment(*line, *a.from_id, *a.to_id);
        a.connected = true;
        break;
      } catch (const NotOnLine&) {
      } catch (const DirectionUnavailable&) {
      }
    }
  }
  return a;
}

}  // namespace metrics_detail

// Every leg's claimed service must exist between its endpoints.
inline ConnectivityResult check_connectivity(const TransitNetwork& net, const Route& route) {
  ConnectivityResult out;
  for (const auto& leg : route.legs) {
    const bool ok = metrics_detail::analyze_leg(net, leg).connected;
    out.per_leg.push_back(ok);
    out.connected = out.connected && ok;
  }
  return out;
}

// Fails on any disabled line used, or any forbidden station touched, including
// stations a ride passes through without stopping there.
inline AvoidanceResult check_avoidance(const TransitNetwork& net, const EffectiveConstraints& constraints,
                                       const Route& route) {
  AvoidanceResult out;
  std::set<std::string> seen;
  auto hit = [&](const std::string& id) {
    out.avoided = false;
    if (seen.insert(id).second) out.offenders.push_back(id);
  };
  for (const auto& leg : route.legs) {
    if (leg.line) {
      for (const Line* line : net.lines_labeled(leg.mode, *leg.line)) {
        if (constraints.line_disabled(line->id)) hit(line->id);
      }
    }
    const auto a = metrics_detail::analyze_leg(net, leg);
    if (a.connected && !a.expansion.empty()) {
      for (const auto& s : a.expansion) {
        if (constraints.station_forbidden(s)) hit(s);
      }
    } else {
      if (a.from_id && constraints.station_forbidden(*a.from_id)) hit(*a.from_id);
      if (a.to_id && constraints.station_forbidden(*a.to_id)) hit(*a.to_id);
    }
  }
  return out;
}

// Sum of per-leg estimates. Walk legs, disconnected legs and legs the
// provider cannot answer are charged straight-line walking time.
inline double route_travel_time(const TransitNetwork& net, const Route& route, const TravelTimeProvider& provider,
                                const DepartTime& depart) {
  double total = 0.0;
  for (std::size_t i = 0; i < route.legs.size(); ++i) {
    const Leg& leg = route.legs[i];
    const auto a = metrics_detail::analyze_leg(net, leg);
    const auto from = a.from_id ? a.from_id : metrics_detail::resolve_best_effort(net, leg.from);
    const auto to = a.to_id ? a.to_id : metrics_detail::resolve_best_effort(net, leg.to);
    if (!from || !to) {
      throw UnknownStation("leg " + std::to_string(i) + " names a station not in the network: '" +
                           (from ? leg.to : leg.from) + "'");
    }
    std::optional<double> t;
    if (leg.mode != "walk" && a.connected) t = provider.estimate(leg.mode, leg.line, *from, *to, depart);
    total += t ? *t : walk_time(net, *from, *to);
  }
  return total;
}

// Travel time over the origin-to-destination walking time, clamped to 1.
// `travel_time_s` is nullopt for an invalid result.
inline double normalized_time(const TransitNetwork& net, std::string_view origin, std::string_view dest,
                              std::optional<double> travel_time_s) {
  const double baseline = walk_time(net, origin, dest);
  if (!travel_time_s) return 1.0;
  if (baseline <= 0.0) return *travel_time_s <= 0.0 ? 0.0 : 1.0;
  return std::min(1.0, *travel_time_s / baseline);
}

// Boundaries between consecutive legs on a different (mode, line) carrier.
inline int count_transfers(const Route& route) {
  int n = 0;
  auto line_key = [](const Leg& l) { return l.line ? std::optional<std::string>(normalize_name(*l.line)) : std::nullopt; };
  for (std::size_t i = 0; i + 1 < route.legs.size(); ++i) {
    const Leg& a = route.legs[i];
    const Leg& b = route.legs[i + 1];
    if (a.mode != b.mode || line_key(a) != line_key(b)) ++n;
  }
  return n;
}

namespace metrics_detail {

// Whether `name` designates station `id` (exactly, or as one of its names).
inline bool names_station(const TransitNetwork& net, std::string_view name, std::string_view id) {
  if (auto r = resolve_exact(net, name); r && *r == id) return true;
  const Station& s = net.station(id);
  const std::string key = normalize_name(name);
  if (normalize_name(s.name) == key) return true;
  return std::any_of(s.aliases.begin(), s.aliases.end(), [&](const auto& a) { return normalize_name(a) == key; });
}

inline bool reaches(const TransitNetwork& net, const Route& route, std::string_view origin, std::string_view dest) {
  if (route.legs.empty()) return origin == dest;
  return validate_chaining(route).empty() && names_station(net, route.legs.front().from, origin) &&
         names_station(net, route.legs.back().to, dest);
}

}  // namespace metrics_detail

// All four metrics plus format accounting for one planner result. Origin and
// destination are station ids.
inline MetricsReport evaluate(const TransitNetwork& net, const EffectiveConstraints& constraints,
                              std::string_view origin, std::string_view dest, const ParseResult& parsed,
                              const TravelTimeProvider& provider, const DepartTime& depart) {
  const double baseline = walk_time(net, origin, dest);  // throws UnknownStation
  MetricsReport r;
  if (const auto* v = std::get_if<FormatViolation>(&parsed)) {
    r.format_violation = true;
    r.violation_reason = v->reason;
    r.travel_time_s = baseline;
    r.normalized_time = 1.0;
    return r;
  }
  const Route& route = std::get<Route>(parsed);
  const auto conn = check_connectivity(net, route);
  r.connected = conn.connected;
  r.per_leg_connectivity = conn.per_leg;
  auto avoid = check_avoidance(net, constraints, route);
  r.avoided = avoid.avoided;
  r.offenders = std::move(avoid.offenders);
  r.transfers = count_transfers(route);

  std::optional<double> travel;
  try {
    travel = route_travel_time(net, route, provider, depart);
  } catch (const UnknownStation&) {
  }
  r.valid = travel.has_value() && metrics_detail::reaches(net, route, origin, dest);
  r.travel_time_s = travel.value_or(baseline);
  r.normalized_time = normalized_time(net, origin, dest, r.valid ? travel : std::nullopt);
  return r;
}

inline json metrics_to_json(const MetricsReport& r) {
  json j = {{"connected", r.connected},
            {"per_leg_connectivity", r.per_leg_connectivity},
            {"avoided", r.avoided},
            {"offenders", r.offenders},
            {"travel_time_s", r.travel_time_s},
            {"normalized_time", r.normalized_time},
            {"transfers", r.transfers},
            {"format_violation", r.format_violation},
            {"valid", r.valid}};
  j["violation_reason"] = r.violation_reason ? json(std::string(to_string(*r.violation_reason))) : json(nullptr);
  return j;
}

inline MetricsReport metrics_from_json(const json& j) {
  const std::string where = "metrics report";
  detail::require_only_keys(j,
                            {"connected", "per_leg_connectivity", "avoided", "offenders", "travel_time_s",
                             "normalized_time", "transfers", "format_violation", "valid", "violation_reason"},
                            where);
  MetricsReport r;
  try {
    r.connected = j.at("connected").get<bool>();
    r.per_leg_connectivity = j.at("per_leg_connectivity").get<std::vector<bool>>();
    r.avoided = j.at("avoided").get<bool>();
    r.offenders = j.at("offenders").get<std::vector<std::string>>();
    r.travel_time_s = j.at("travel_time_s").get<double>();
    r.normalized_time = j.at("normalized_time").get<double>();
    r.transfers = j.at("transfers").get<int>();
    r.format_violation = j.at("format_violation").get<bool>();
    r.valid = j.at("valid").get<bool>();
  } catch (const json::exception& e) {
    throw SchemaError(where + ": " + e.what());
  }
  if (auto it = j.find("violation_reason"); it != j.end() && it->is_string()) {
    for (auto reason : {ViolationReason::ExtraProse, ViolationReason::NotAnObject, ViolationReason::BadModeTerm,
                        ViolationReason::MissingField, ViolationReason::EmptyName}) {
      if (to_string(reason) == it->get<std::string>()) r.violation_reason = reason;
    }
  }
  return r;
}

}  // namespace detour
