#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "detour/router.hpp"

namespace detour {

// Exhaustive reference planner for small networks. Enumerates every simple
// station path realizable by rides and walks, scores it with the same cost
// model as plan(), and keeps the best under the same tie-breaking. Shares no
// search code with plan().
inline PlanResult brute_force_plan(const TransitNetwork& net, const EffectiveConstraints& constraints,
                                   std::string_view origin, std::string_view dest, Objective objective,
                                   std::size_t max_stations, const PlanOptions& options = {}) {
  const auto& stations = net.stations();
  const auto& lines = net.lines();
  if (stations.size() > max_stations) {
    throw TooLarge("network has " + std::to_string(stations.size()) + " stations, limit is " +
                   std::to_string(max_stations));
  }
  const auto o = net.station_index(origin);
  const auto d = net.station_index(dest);
  if (!o || !d) throw UnknownStation("unknown origin or destination");
  if (constraints.forbidden_stations.contains(std::string(origin)) ||
      constraints.forbidden_stations.contains(std::string(dest))) {
    throw ForbiddenEndpoint("origin or destination is forbidden");
  }
  if (*o == *d) return PlanResult{};

  const std::size_t n = stations.size();
  const std::int64_t penalty_ms = std::llround(options.transfer_penalty_s * 1000.0);
  auto usable = [&](std::size_t i) { return !constraints.forbidden_stations.contains(stations[i].id); };

  // Walking cost matrix (ms), nullopt when no walk link.
  std::vector<std::vector<std::optional<std::int64_t>>> walk_ms(n, std::vector<std::optional<std::int64_t>>(n));
  auto offer_walk = [&](std::size_t a, std::size_t b, std::int64_t ms) {
    auto& cell = walk_ms[a][b];
    if (!cell || ms < *cell) cell = ms;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const double meters = haversine_m(stations[a].location, stations[b].location);
      if (meters > net.walk_link_threshold_m()) continue;
      offer_walk(a, b, std::max<std::int64_t>(1, std::llround(meters / net.walking_speed_mps() * 1000.0)));
    }
  }
  for (const auto& line : lines) {
    if (line.mode != LineMode::walk_network || constraints.disabled_lines.contains(line.id)) continue;
    for (std::size_t h = 0; h + 1 < line.stops.size(); ++h) {
      const auto a = *net.station_index(line.stops[h]);
      const auto b = *net.station_index(line.stops[h + 1]);
      const std::int64_t ms = std::llround(line.hop_times_s[h] * 1000.0);
      offer_walk(a, b, ms);
      if (line.bidirectional) offer_walk(b, a, ms);
    }
  }

  // A move is one hop: ride line `line` (index) or walk (line == -1).
  struct Move {
    std::size_t to;
    int line;
    std::int64_t ms;
  };
  std::vector<std::vector<Move>> moves(n);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.mode == LineMode::walk_network || line.mode == LineMode::bike) continue;
    if (constraints.disabled_lines.contains(line.id)) continue;
    for (std::size_t h = 0; h + 1 < line.stops.size(); ++h) {
      const auto a = *net.station_index(line.stops[h]);
      const auto b = *net.station_index(line.stops[h + 1]);
      const std::int64_t ms = std::llround(line.hop_times_s[h] * 1000.0);
      moves[a].push_back({b, static_cast<int>(li), ms});
      if (line.bidirectional) moves[b].push_back({a, static_cast<int>(li), ms});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (walk_ms[a][b]) moves[a].push_back({b, -1, *walk_ms[a][b]});
    }
  }

  struct Candidate {
    std::int64_t cost_ms = 0;
    int transfers = 0;
    std::size_t visited = 0;
    std::vector<std::string> labels;
    std::vector<std::string> ids;
    std::vector<std::string> line_ids;
    std::vector<std::size_t> path;
    std::vector<int> hop_lines;
  };

  // Score a complete path from scratch.
  auto score = [&](const std::vector<std::size_t>& path, const std::vector<int>& hop_lines,
                   const std::vector<std::int64_t>& hop_ms) {
    Candidate c;
    c.path = path;
    c.hop_lines = hop_lines;
    c.visited = path.size();
    for (std::size_t s : path) c.ids.push_back(stations[s].id);
    for (std::size_t h = 0; h < hop_lines.size(); ++h) {
      c.cost_ms += hop_ms[h];
      if (h == 0 || hop_lines[h] != hop_lines[h - 1]) {
        if (h > 0) {
          ++c.transfers;
          c.cost_ms += penalty_ms;
        }
        c.labels.push_back(hop_lines[h] < 0 ? std::string() : lines[hop_lines[h]].label);
        c.line_ids.push_back(hop_lines[h] < 0 ? std::string() : lines[hop_lines[h]].id);
      }
    }
    return c;
  };
  std::optional<Candidate> best;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> path{*o};
  std::vector<int> hop_lines;
  std::vector<std::int64_t> hop_ms;
  on_path[*o] = true;

  auto dfs = [&](auto&& self, std::size_t at) -> void {
    if (at == *d) {
      Candidate c = score(path, hop_lines, hop_ms);
      if (!best) {
        best = std::move(c);
        return;
      }
      const std::size_t r1 = objective == Objective::min_stops ? c.visited : 0;
      const std::size_t r2 = objective == Objective::min_stops ? best->visited : 0;
      if (std::tie(r1, c.cost_ms, c.transfers, c.labels, c.ids, c.line_ids) <
          std::tie(r2, best->cost_ms, best->transfers, best->labels, best->ids, best->line_ids)) {
        best = std::move(c);
      }
      return;
    }
    for (const Move& m : moves[at]) {
      if (on_path[m.to] || !usable(m.to)) continue;
      on_path[m.to] = true;
      path.push_back(m.to);
      hop_lines.push_back(m.line);
      hop_ms.push_back(m.ms);
      self(self, m.to);
      hop_ms.pop_back();
      hop_lines.pop_back();
      path.pop_back();
      on_path[m.to] = false;
    }
  };
  dfs(dfs, *o);

  if (!best) throw NoRoute("no route under the constraints");

  PlanResult result;
  result.total_cost_s = static_cast<double>(best->cost_ms) / 1000.0;
  result.transfers = best->transfers;
  result.stations_visited = static_cast<int>(best->visited);
  for (std::size_t h = 0; h < best->hop_lines.size(); ++h) {
    const std::string& from = stations[best->path[h]].name;
    const std::string& to = stations[best->path[h + 1]].name;
    if (h > 0 && best->hop_lines[h] == best->hop_lines[h - 1]) {
      result.route.legs.back().to = to;
      continue;
    }
    Leg leg;
    if (best->hop_lines[h] < 0) {
      leg.mode = "walk";
    } else {
      const Line& line = lines[best->hop_lines[h]];
      leg.mode = line.mode == LineMode::bus ? "bus" : "subway";
      leg.line = line.label;
    }
    leg.from = from;
    leg.to = to;
    result.route.legs.push_back(std::move(leg));
  }
  return result;
}

}  // namespace detour
