#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "detour/disruption.hpp"
#include "detour/network.hpp"
#include "detour/route.hpp"

namespace detour::testing {

inline std::string data_path(const std::string& rel) { return std::string(DETOUR_DATA_DIR) + "/" + rel; }
inline std::string fixture_path(const std::string& rel) { return std::string(DETOUR_FIXTURE_DIR) + "/" + rel; }

// Stations A..E, subway R = A-B-C-D (120 s hops), subway G = A-E-D (180 s hops).
inline TransitNetwork net_toy() { return load_network_file(data_path("networks/net-toy.json")); }

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() / ("detour-" + name + "-" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

// Small random network: stations scattered over a ~3 km square so that some,
// not all, pairs are within walking range; lines of 2..5 stops with random
// modes, directions and hop times. Labels are unique per mode.
inline TransitNetwork random_network(std::mt19937_64& rng, std::size_t n_stations, std::size_t n_lines) {
  std::uniform_real_distribution<double> dlat(40.70, 40.727), dlon(-74.02, -73.985);
  std::vector<Station> stations;
  for (std::size_t i = 0; i < n_stations; ++i) {
    stations.push_back({"s" + std::to_string(i), "Station " + std::to_string(i), {}, {dlat(rng), dlon(rng)}});
  }
  std::vector<Line> lines;
  std::uniform_int_distribution<int> hop(30, 400), mode(0, 9), coin(0, 3);
  for (std::size_t li = 0; li < n_lines && n_stations >= 2; ++li) {
    std::vector<std::size_t> order(n_stations);
    for (std::size_t i = 0; i < n_stations; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> len(2, std::min<std::size_t>(5, n_stations));
    Line line;
    line.id = "L" + std::to_string(li);
    // A few shared labels across modes, and some equal hop times, to exercise tie-breaking.
    line.label = std::string(1, static_cast<char>('A' + li));
    const int m = mode(rng);
    line.mode = m < 6 ? LineMode::subway : m < 8 ? LineMode::bus : m < 9 ? LineMode::walk_network : LineMode::bike;
    line.bidirectional = coin(rng) != 0;
    const std::size_t k = len(rng);
    for (std::size_t i = 0; i < k; ++i) line.stops.push_back(stations[order[i]].id);
    for (std::size_t i = 0; i + 1 < k; ++i) line.hop_times_s.push_back(coin(rng) == 0 ? 120.0 : hop(rng));
    lines.push_back(std::move(line));
  }
  return TransitNetwork(std::move(stations), std::move(lines));
}

// Random station and line constraints over `net`.
inline EffectiveConstraints random_constraints(std::mt19937_64& rng, const TransitNetwork& net) {
  EffectiveConstraints k;
  std::uniform_int_distribution<int> pct(0, 99);
  for (const auto& s : net.stations()) {
    if (pct(rng) < 12) k.forbidden_stations.insert(s.id);
  }
  for (const auto& l : net.lines()) {
    if (pct(rng) < 15) k.disabled_lines.insert(l.id);
  }
  return k;
}

// Names drawn from a pool that includes quotes, braces, non-ASCII and padding.
inline std::string random_name(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"Times Sq", "42 St", "\"Q\"", "{x}", "Café", "北京", "a\\b",
                                                  "Flushing-Main", "1", "Port Authority", "\t", " ]"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), count(1, 3);
  std::string s = "S";
  for (std::size_t i = count(rng); i > 0; --i) s += pieces[pick(rng)];
  return s;
}

inline Route random_route(std::mt19937_64& rng) {
  static const std::vector<std::string> modes = {"subway", "bus", "walk", "bike"};
  std::uniform_int_distribution<std::size_t> n_legs(0, 6), mode(0, 3);
  std::bernoulli_distribution with_line(0.3);
  Route r;
  for (std::size_t i = n_legs(rng); i > 0; --i) {
    Leg leg;
    leg.mode = modes[mode(rng)];
    if (mode_requires_line(leg.mode) || with_line(rng)) leg.line = random_name(rng);
    leg.from = random_name(rng);
    leg.to = random_name(rng);
    r.legs.push_back(std::move(leg));
  }
  return r;
}

}  // namespace detour::testing
