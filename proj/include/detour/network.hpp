#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "detour/errors.hpp"
#include "detour/geo.hpp"
#include "detour/json_util.hpp"
#include "detour/text.hpp"

namespace detour {

enum class LineMode : std::uint8_t { subway, bus, bike, walk_network };

inline std::string_view to_string(LineMode m) {
  switch (m) {
    case LineMode::subway: return "subway";
    case LineMode::bus: return "bus";
    case LineMode::bike: return "bike";
    case LineMode::walk_network: return "walk-network";
  }
  return "subway";
}

inline std::optional<LineMode> parse_line_mode(std::string_view s) {
  if (s == "subway") return LineMode::subway;
  if (s == "bus") return LineMode::bus;
  if (s == "bike") return LineMode::bike;
  if (s == "walk-network") return LineMode::walk_network;
  return std::nullopt;
}

// Mode term a leg on this line carries in a route.
inline std::string_view leg_mode_term(LineMode m) {
  switch (m) {
    case LineMode::subway: return "subway";
    case LineMode::bus: return "bus";
    case LineMode::bike: return "bike";
    case LineMode::walk_network: return "walk";
  }
  return "subway";
}

struct Station {
  std::string id;
  std::string name;
  std::vector<std::string> aliases;
  LatLon location;

  friend bool operator==(const Station&, const Station&) = default;
};

struct Line {
  std::string id;
  std::string label;
  LineMode mode = LineMode::subway;
  std::vector<std::string> stops;
  std::vector<double> hop_times_s;  // size == stops.size() - 1
  bool bidirectional = true;

  friend bool operator==(const Line&, const Line&) = default;
};

struct BikeStation {
  std::string id;
  LatLon location;
  std::int64_t bikes_available = 0;

  friend bool operator==(const BikeStation&, const BikeStation&) = default;
};

inline constexpr double kDefaultWalkLinkThresholdM = 1000.0;
inline constexpr double kDefaultWalkingSpeedMps = 1.25;

// Immutable, validated transit network. Station and line order is the
// document order and is preserved through export.
class TransitNetwork {
 public:
  TransitNetwork(std::vector<Station> stations, std::vector<Line> lines,
                 std::vector<BikeStation> bike_stations = {},
                 double walk_link_threshold_m = kDefaultWalkLinkThresholdM,
                 double walking_speed_mps = kDefaultWalkingSpeedMps)
      : stations_(std::move(stations)),
        lines_(std::move(lines)),
        bike_stations_(std::move(bike_stations)),
        walk_link_threshold_m_(walk_link_threshold_m),
        walking_speed_mps_(walking_speed_mps) {
    validate_and_index();
  }

  const std::vector<Station>& stations() const { return stations_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<BikeStation>& bike_stations() const { return bike_stations_; }
  double walk_link_threshold_m() const { return walk_link_threshold_m_; }
  double walking_speed_mps() const { return walking_speed_mps_; }

  std::optional<std::size_t> station_index(std::string_view id) const {
    auto it = station_by_id_.find(std::string(id));
    if (it == station_by_id_.end()) return std::nullopt;
    return it->second;
  }

  const Station& station(std::string_view id) const {
    auto idx = station_index(id);
    if (!idx) throw UnknownStation("unknown station id '" + std::string(id) + "'");
    return stations_[*idx];
  }

  std::optional<std::size_t> line_index(std::string_view id) const {
    auto it = line_by_id_.find(std::string(id));
    if (it == line_by_id_.end()) return std::nullopt;
    return it->second;
  }

  const Line& line(std::string_view id) const {
    auto idx = line_index(id);
    if (!idx) throw UnknownLine("unknown line id '" + std::string(id) + "'");
    return lines_[*idx];
  }

  // Station ids whose normalized canonical name or alias equals `key`.
  // Canonical matches take precedence over alias matches.
  std::vector<std::string> stations_named(const std::string& key) const {
    if (auto it = by_canonical_.find(key); it != by_canonical_.end()) {
      return {stations_[it->second].id};
    }
    std::vector<std::string> out;
    if (auto it = by_alias_.find(key); it != by_alias_.end()) {
      for (std::size_t idx : it->second) out.push_back(stations_[idx].id);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Lines whose mode term and normalized label match.
  std::vector<const Line*> lines_labeled(std::string_view mode_term, std::string_view label) const {
    const std::string key = normalize_name(label);
    std::vector<const Line*> out;
    for (const auto& l : lines_) {
      if (leg_mode_term(l.mode) == mode_term && normalize_name(l.label) == key) out.push_back(&l);
    }
    return out;
  }

  friend bool operator==(const TransitNetwork& a, const TransitNetwork& b) {
    return a.stations_ == b.stations_ && a.lines_ == b.lines_ && a.bike_stations_ == b.bike_stations_ &&
           a.walk_link_threshold_m_ == b.walk_link_threshold_m_ && a.walking_speed_mps_ == b.walking_speed_mps_;
  }

 private:
  void validate_and_index() {
    if (!(walk_link_threshold_m_ > 0.0) || !std::isfinite(walk_link_threshold_m_)) {
      throw SchemaError("walk_link_threshold_m must be > 0");
    }
    if (!(walking_speed_mps_ > 0.0) || !std::isfinite(walking_speed_mps_)) {
      throw SchemaError("walking_speed_mps must be > 0");
    }
    for (std::size_t i = 0; i < stations_.size(); ++i) {
      const Station& s = stations_[i];
      if (s.id.empty()) throw SchemaError("station with empty id");
      if (!station_by_id_.emplace(s.id, i).second) throw DuplicateId("duplicate station id '" + s.id + "'");
      if (!s.location.valid()) throw SchemaError("station '" + s.id + "' has out-of-range coordinates");
      const std::string key = normalize_name(s.name);
      if (key.empty()) throw SchemaError("station '" + s.id + "' has an empty name");
      if (!by_canonical_.emplace(key, i).second) {
        throw DuplicateId("stations '" + stations_[by_canonical_[key]].id + "' and '" + s.id +
                          "' share the name '" + s.name + "'");
      }
      for (const auto& alias : s.aliases) {
        const std::string akey = normalize_name(alias);
        if (!akey.empty()) by_alias_[akey].push_back(i);
      }
    }

    std::set<std::pair<std::string, std::string>> labels;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const Line& l = lines_[i];
      if (l.id.empty()) throw SchemaError("line with empty id");
      if (!line_by_id_.emplace(l.id, i).second) throw DuplicateId("duplicate line id '" + l.id + "'");
      const std::string lkey = normalize_name(l.label);
      if (lkey.empty()) throw SchemaError("line '" + l.id + "' has an empty label");
      if (!labels.emplace(std::string(leg_mode_term(l.mode)), lkey).second) {
        throw DuplicateId("line '" + l.id + "' reuses the " + std::string(to_string(l.mode)) + " label '" +
                          l.label + "'");
      }
      if (l.stops.size() < 2) throw SchemaError("line '" + l.id + "' needs at least two stops");
      if (l.hop_times_s.size() + 1 != l.stops.size()) {
        throw SchemaError("line '" + l.id + "': hop_times_s must have one entry per consecutive stop pair");
      }
      std::set<std::string> seen;
      for (const auto& stop : l.stops) {
        if (!station_by_id_.contains(stop)) {
          throw DanglingReference("line '" + l.id + "' references missing station '" + stop + "'");
        }
        if (!seen.insert(stop).second) {
          throw SchemaError("line '" + l.id + "' visits station '" + stop + "' more than once");
        }
      }
      for (double t : l.hop_times_s) {
        if (!(t > 0.0) || !std::isfinite(t)) throw SchemaError("line '" + l.id + "' has a non-positive hop time");
      }
    }

    std::set<std::string> bike_ids;
    for (const auto& b : bike_stations_) {
      if (b.id.empty()) throw SchemaError("bike station with empty id");
      if (!bike_ids.insert(b.id).second) throw DuplicateId("duplicate bike station id '" + b.id + "'");
      if (!b.location.valid()) throw SchemaError("bike station '" + b.id + "' has out-of-range coordinates");
      if (b.bikes_available < 0) throw SchemaError("bike station '" + b.id + "' has negative availability");
    }
  }

  std::vector<Station> stations_;
  std::vector<Line> lines_;
  std::vector<BikeStation> bike_stations_;
  double walk_link_threshold_m_;
  double walking_speed_mps_;

  std::unordered_map<std::string, std::size_t> station_by_id_;
  std::unordered_map<std::string, std::size_t> line_by_id_;
  std::unordered_map<std::string, std::size_t> by_canonical_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_alias_;
};

// ---------------------------------------------------------------------------
// Document I/O

inline TransitNetwork network_from_json(const json& doc) {
  using detail::require_key;
  using detail::require_number;
  using detail::require_string;
  detail::require_only_keys(doc, {"stations", "lines", "bike_stations", "walk_link_threshold_m", "walking_speed_mps"},
                            "network");

  std::vector<Station> stations;
  const json& jstations = require_key(doc, "stations", "network");
  if (!jstations.is_array()) throw SchemaError("network: 'stations' must be an array");
  for (std::size_t i = 0; i < jstations.size(); ++i) {
    const json& js = jstations[i];
    const std::string where = "stations[" + std::to_string(i) + "]";
    detail::require_only_keys(js, {"id", "name", "aliases", "lat", "lon"}, where);
    Station s;
    s.id = require_string(js, "id", where);
    s.name = require_string(js, "name", where);
    if (auto it = js.find("aliases"); it != js.end()) {
      if (!it->is_array()) throw SchemaError(where + ": 'aliases' must be an array");
      for (const auto& a : *it) {
        if (!a.is_string()) throw SchemaError(where + ": aliases must be strings");
        s.aliases.push_back(a.get<std::string>());
      }
    }
    s.location = {require_number(js, "lat", where), require_number(js, "lon", where)};
    stations.push_back(std::move(s));
  }

  std::vector<Line> lines;
  if (auto it = doc.find("lines"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("network: 'lines' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& jl = (*it)[i];
      const std::string where = "lines[" + std::to_string(i) + "]";
      detail::require_only_keys(jl, {"id", "label", "mode", "stops", "hop_times_s", "bidirectional"}, where);
      Line l;
      l.id = require_string(jl, "id", where);
      l.label = require_string(jl, "label", where);
      const std::string mode = require_string(jl, "mode", where);
      auto parsed = parse_line_mode(mode);
      if (!parsed) throw SchemaError(where + ": unknown mode '" + mode + "'");
      l.mode = *parsed;
      const json& stops = require_key(jl, "stops", where);
      if (!stops.is_array()) throw SchemaError(where + ": 'stops' must be an array");
      for (const auto& s : stops) {
        if (!s.is_string()) throw SchemaError(where + ": stops must be station ids");
        l.stops.push_back(s.get<std::string>());
      }
      const json& hops = require_key(jl, "hop_times_s", where);
      if (!hops.is_array()) throw SchemaError(where + ": 'hop_times_s' must be an array");
      for (const auto& h : hops) {
        if (!h.is_number()) throw SchemaError(where + ": hop times must be numbers");
        l.hop_times_s.push_back(h.get<double>());
      }
      const json& bidir = require_key(jl, "bidirectional", where);
      if (!bidir.is_boolean()) throw SchemaError(where + ": 'bidirectional' must be a boolean");
      l.bidirectional = bidir.get<bool>();
      lines.push_back(std::move(l));
    }
  }

  std::vector<BikeStation> bikes;
  if (auto it = doc.find("bike_stations"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("network: 'bike_stations' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& jb = (*it)[i];
      const std::string where = "bike_stations[" + std::to_string(i) + "]";
      detail::require_only_keys(jb, {"id", "lat", "lon", "bikes"}, where);
      BikeStation b;
      b.id = require_string(jb, "id", where);
      b.location = {require_number(jb, "lat", where), require_number(jb, "lon", where)};
      const json& n = require_key(jb, "bikes", where);
      if (!n.is_number_integer()) throw SchemaError(where + ": 'bikes' must be an integer");
      b.bikes_available = n.get<std::int64_t>();
      bikes.push_back(std::move(b));
    }
  }

  double threshold = kDefaultWalkLinkThresholdM;
  double speed = kDefaultWalkingSpeedMps;
  if (doc.contains("walk_link_threshold_m")) threshold = require_number(doc, "walk_link_threshold_m", "network");
  if (doc.contains("walking_speed_mps")) speed = require_number(doc, "walking_speed_mps", "network");

  return TransitNetwork(std::move(stations), std::move(lines), std::move(bikes), threshold, speed);
}

inline TransitNetwork load_network(std::string_view document) {
  return network_from_json(detail::parse_document(document, "network document"));
}

inline TransitNetwork load_network_file(const std::string& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const std::runtime_error& e) {
    throw SchemaError(e.what());
  }
  return load_network(text);
}

inline json network_to_json(const TransitNetwork& net) {
  json doc = json::object();
  json stations = json::array();
  for (const auto& s : net.stations()) {
    stations.push_back({{"id", s.id}, {"name", s.name}, {"aliases", s.aliases}, {"lat", s.location.lat},
                        {"lon", s.location.lon}});
  }
  json lines = json::array();
  for (const auto& l : net.lines()) {
    lines.push_back({{"id", l.id},
                     {"label", l.label},
                     {"mode", std::string(to_string(l.mode))},
                     {"stops", l.stops},
                     {"hop_times_s", l.hop_times_s},
                     {"bidirectional", l.bidirectional}});
  }
  json bikes = json::array();
  for (const auto& b : net.bike_stations()) {
    bikes.push_back({{"id", b.id}, {"lat", b.location.lat}, {"lon", b.location.lon}, {"bikes", b.bikes_available}});
  }
  doc["stations"] = std::move(stations);
  doc["lines"] = std::move(lines);
  doc["bike_stations"] = std::move(bikes);
  doc["walk_link_threshold_m"] = net.walk_link_threshold_m();
  doc["walking_speed_mps"] = net.walking_speed_mps();
  return doc;
}

// ---------------------------------------------------------------------------
// Queries

inline std::string resolve_station(const TransitNetwork& net, std::string_view name) {
  const std::string key = normalize_name(name);
  auto ids = net.stations_named(key);
  if (ids.empty()) throw NotFound("no station named '" + std::string(name) + "'");
  if (ids.size() > 1) throw Ambiguous(std::string(name), std::move(ids));
  return ids.front();
}

// Seconds to walk the great-circle distance between two stations.
inline double walk_time(const TransitNetwork& net, std::string_view a, std::string_view b) {
  const Station& sa = net.station(a);
  const Station& sb = net.station(b);
  return haversine_m(sa.location, sb.location) / net.walking_speed_mps();
}

inline std::set<std::string> stations_in_zone(const TransitNetwork& net, const BoundingBox& zone) {
  if (!zone.well_formed()) throw InvalidZone("zone has min greater than max");
  std::set<std::string> out;
  for (const auto& s : net.stations()) {
    if (zone.contains(s.location)) out.insert(s.id);
  }
  return out;
}

namespace detail {

inline std::optional<std::size_t> stop_position(const Line& line, std::string_view station) {
  auto it = std::find(line.stops.begin(), line.stops.end(), station);
  if (it == line.stops.end()) return std::nullopt;
  return static_cast<std::size_t>(it - line.stops.begin());
}

}  // namespace detail

// Contiguous run of `line`'s stops from `from` to `to`, both included.
inline std::vector<std::string> line_segment(const Line& line, std::string_view from, std::string_view to) {
  auto i = detail::stop_position(line, from);
  auto j = detail::stop_position(line, to);
  if (!i || !j) {
    throw NotOnLine("'" + std::string(!i ? from : to) + "' is not a stop of line '" + line.id + "'");
  }
  if (*i <= *j) return {line.stops.begin() + *i, line.stops.begin() + *j + 1};
  if (!line.bidirectional) {
    throw DirectionUnavailable("line '" + line.id + "' does not run from '" + std::string(from) + "' to '" +
                               std::string(to) + "'");
  }
  std::vector<std::string> out(line.stops.begin() + *j, line.stops.begin() + *i + 1);
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> line_segment(const TransitNetwork& net, std::string_view line_id,
                                             std::string_view from, std::string_view to) {
  return line_segment(net.line(line_id), from, to);
}

// Scheduled seconds to ride `line` between two of its stops.
inline double segment_seconds(const Line& line, std::string_view from, std::string_view to) {
  auto i = detail::stop_position(line, from);
  auto j = detail::stop_position(line, to);
  if (!i || !j) throw NotOnLine("endpoint not on line '" + line.id + "'");
  if (*i > *j && !line.bidirectional) throw DirectionUnavailable("line '" + line.id + "' is one-way");
  const auto [lo, hi] = std::minmax(*i, *j);
  double total = 0.0;
  for (std::size_t k = lo; k < hi; ++k) total += line.hop_times_s[k];
  return total;
}

}  // namespace detour
