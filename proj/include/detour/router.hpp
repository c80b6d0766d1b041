#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "detour/disruption.hpp"
#include "detour/errors.hpp"
#include "detour/network.hpp"
#include "detour/route.hpp"

namespace detour {

enum class Objective { min_time, min_stops };

inline std::string_view to_string(Objective o) { return o == Objective::min_time ? "min-time" : "min-stops"; }

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "min-time") return Objective::min_time;
  if (s == "min-stops") return Objective::min_stops;
  return std::nullopt;
}

struct PlanOptions {
  // Charged per carrier change in the time cost (both objectives).
  double transfer_penalty_s = 300.0;
};

struct PlanResult {
  Route route;
  double total_cost_s = 0.0;  // ride + walk + penalty per transfer
  int transfers = 0;
  int stations_visited = 1;

  friend bool operator==(const PlanResult&, const PlanResult&) = default;
};

// Search costs are integral milliseconds so that equal-cost alternatives
// compare exactly and tie-breaking is reproducible.
inline std::int64_t to_cost_ms(double seconds) { return std::llround(seconds * 1000.0); }

namespace router_detail {

inline constexpr int kStart = -2;
inline constexpr int kWalk = -1;

struct Edge {
  int to;
  int carrier;  // kWalk or a line index
  std::int64_t cost_ms;
};

// Ride and walk edges of the constrained graph. Forbidden stations have no
// edges; disabled lines and bike lines contribute none; walk-network lines
// add walking edges.
inline std::vector<std::vector<Edge>> build_graph(const TransitNetwork& net, const EffectiveConstraints& k) {
  const auto& stations = net.stations();
  const std::size_t n = stations.size();
  std::vector<bool> blocked(n, false);
  for (std::size_t i = 0; i < n; ++i) blocked[i] = k.station_forbidden(stations[i].id);

  std::vector<std::vector<Edge>> adj(n);
  std::map<std::pair<int, int>, std::int64_t> walk;
  auto add_walk = [&](int a, int b, std::int64_t ms) {
    auto [it, inserted] = walk.emplace(std::make_pair(a, b), ms);
    if (!inserted) it->second = std::min(it->second, ms);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (blocked[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || blocked[j]) continue;
      const double d = haversine_m(stations[i].location, stations[j].location);
      if (d <= net.walk_link_threshold_m()) {
        add_walk(static_cast<int>(i), static_cast<int>(j),
                 std::max<std::int64_t>(1, to_cost_ms(d / net.walking_speed_mps())));
      }
    }
  }

  const auto& lines = net.lines();
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (k.line_disabled(line.id) || line.mode == LineMode::bike) continue;
    for (std::size_t h = 0; h + 1 < line.stops.size(); ++h) {
      const int a = static_cast<int>(*net.station_index(line.stops[h]));
      const int b = static_cast<int>(*net.station_index(line.stops[h + 1]));
      if (blocked[a] || blocked[b]) continue;
      const std::int64_t ms = to_cost_ms(line.hop_times_s[h]);
      if (line.mode == LineMode::walk_network) {
        add_walk(a, b, ms);
        if (line.bidirectional) add_walk(b, a, ms);
      } else {
        adj[a].push_back({b, static_cast<int>(li), ms});
        if (line.bidirectional) adj[b].push_back({a, static_cast<int>(li), ms});
      }
    }
  }
  for (const auto& [ab, ms] : walk) adj[ab.first].push_back({ab.second, kWalk, ms});
  return adj;
}

// Partial journey ending in some (station, carrier) state.
struct Label {
  std::int64_t cost_ms = 0;
  int transfers = 0;
  std::vector<int> stations;             // path, origin first
  std::vector<int> arrival_carrier;      // carrier used to reach stations[i]; kStart for the origin
  std::vector<std::string> leg_labels;   // one per leg, "" for walking
  std::vector<std::string> leg_carriers; // line id per leg, "" for walking
  std::vector<std::string> station_ids;  // same as stations, by id
};

struct KeyOrder {
  Objective objective;

  // True when a is strictly better than b.
  bool better(const Label& a, const Label& b) const {
    if (objective == Objective::min_stops && a.stations.size() != b.stations.size()) {
      return a.stations.size() < b.stations.size();
    }
    if (a.cost_ms != b.cost_ms) return a.cost_ms < b.cost_ms;
    if (a.transfers != b.transfers) return a.transfers < b.transfers;
    if (a.leg_labels != b.leg_labels) return a.leg_labels < b.leg_labels;
    if (a.station_ids != b.station_ids) return a.station_ids < b.station_ids;
    return a.leg_carriers < b.leg_carriers;
  }
};

inline Route route_from_label(const TransitNetwork& net, const Label& label) {
  Route route;
  const auto& stations = net.stations();
  for (std::size_t i = 1; i < label.stations.size(); ++i) {
    const int carrier = label.arrival_carrier[i];
    const std::string& from = stations[label.stations[i - 1]].name;
    const std::string& to = stations[label.stations[i]].name;
    if (i > 1 && label.arrival_carrier[i - 1] == carrier) {
      route.legs.back().to = to;
      continue;
    }
    Leg leg;
    if (carrier == kWalk) {
      leg.mode = "walk";
    } else {
      const Line& line = net.lines()[carrier];
      leg.mode = std::string(leg_mode_term(line.mode));
      leg.line = line.label;
    }
    leg.from = from;
    leg.to = to;
    route.legs.push_back(std::move(leg));
  }
  return route;
}

}  // namespace router_detail

// Deterministic constrained journey planner over (station, carrier) states.
//
// Objective order: min-time ranks by time cost (ride + walk + penalty per
// transfer); min-stops ranks by stations visited first, then time cost.
// Remaining ties go to fewer transfers, then the smaller sequence of leg line
// labels, then the smaller station id sequence, then line ids.
inline PlanResult plan(const TransitNetwork& net, const EffectiveConstraints& constraints, std::string_view origin,
                       std::string_view dest, Objective objective, const PlanOptions& options = {}) {
  using namespace router_detail;
  const auto o = net.station_index(origin);
  const auto d = net.station_index(dest);
  if (!o) throw UnknownStation("unknown origin '" + std::string(origin) + "'");
  if (!d) throw UnknownStation("unknown destination '" + std::string(dest) + "'");
  if (constraints.station_forbidden(std::string(origin)) || constraints.station_forbidden(std::string(dest))) {
    throw ForbiddenEndpoint("origin or destination is forbidden");
  }
  if (*o == *d) return PlanResult{};

  const auto adj = build_graph(net, constraints);
  const std::int64_t penalty_ms = to_cost_ms(options.transfer_penalty_s);
  const KeyOrder order{objective};
  const std::size_t n = net.stations().size();
  const std::size_t n_carriers = net.lines().size() + 2;  // walk, start, lines
  auto state_of = [&](int station, int carrier) {
    return static_cast<std::size_t>(station) * n_carriers + static_cast<std::size_t>(carrier + 2);
  };

  std::vector<std::optional<Label>> best(n * n_carriers);
  std::vector<bool> settled(n * n_carriers, false);
  struct Entry {
    std::size_t label_state;
    Label label;
  };
  auto cmp = [&](const Entry& a, const Entry& b) { return order.better(b.label, a.label); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);

  Label start;
  start.stations = {static_cast<int>(*o)};
  start.arrival_carrier = {kStart};
  start.station_ids = {net.stations()[*o].id};
  best[state_of(static_cast<int>(*o), kStart)] = start;
  queue.push({state_of(static_cast<int>(*o), kStart), std::move(start)});

  while (!queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    if (settled[top.label_state]) continue;
    settled[top.label_state] = true;
    const Label& cur = top.label;
    const int at = cur.stations.back();
    const int carrier = cur.arrival_carrier.back();

    if (at == static_cast<int>(*d)) {
      PlanResult result;
      result.route = route_from_label(net, cur);
      result.total_cost_s = static_cast<double>(cur.cost_ms) / 1000.0;
      result.transfers = cur.transfers;
      result.stations_visited = static_cast<int>(cur.stations.size());
      return result;
    }

    for (const Edge& e : adj[at]) {
      const std::size_t next_state = state_of(e.to, e.carrier);
      if (settled[next_state]) continue;
      Label next = cur;
      const bool new_leg = carrier != e.carrier;
      const bool transfer = new_leg && carrier != kStart;
      next.cost_ms += e.cost_ms + (transfer ? penalty_ms : 0);
      next.transfers += transfer ? 1 : 0;
      next.stations.push_back(e.to);
      next.arrival_carrier.push_back(e.carrier);
      next.station_ids.push_back(net.stations()[e.to].id);
      if (new_leg) {
        if (e.carrier == kWalk) {
          next.leg_labels.emplace_back();
          next.leg_carriers.emplace_back();
        } else {
          next.leg_labels.push_back(net.lines()[e.carrier].label);
          next.leg_carriers.push_back(net.lines()[e.carrier].id);
        }
      }
      auto& slot = best[next_state];
      if (!slot || order.better(next, *slot)) {
        slot = next;
        queue.push({next_state, std::move(next)});
      }
    }
  }
  throw NoRoute("no route from '" + std::string(origin) + "' to '" + std::string(dest) + "' under the constraints");
}

}  // namespace detour
