#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "detour/errors.hpp"
#include "detour/network.hpp"

namespace detour {

namespace gtfs {

// One parsed CSV table. Rows exclude the header.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view col) const {
    auto it = std::find(header.begin(), header.end(), col);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  }

  std::size_t require_column(std::string_view col) const {
    auto c = column(col);
    if (!c) throw MalformedRow(name, 0, "missing column '" + std::string(col) + "'");
    return *c;
  }

  // Field value; empty when the row is shorter than the header.
  const std::string& field(std::size_t row, std::optional<std::size_t> col) const {
    static const std::string empty;
    if (!col || *col >= rows[row].size()) return empty;
    return rows[row][*col];
  }
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF, UTF-8 BOM.
inline Table parse_csv(std::string name, std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string fieldbuf;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t record_no = 0;

  auto end_field = [&] {
    record.push_back(std::move(fieldbuf));
    fieldbuf.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // Skip blank lines.
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
    ++record_no;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          fieldbuf.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        fieldbuf.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started || !fieldbuf.empty()) {
          throw MalformedRow(name, records.empty() ? 0 : records.size(), "stray quote");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        fieldbuf.push_back(c);
    }
  }
  if (in_quotes) throw MalformedRow(name, records.size(), "unterminated quoted field");
  if (!fieldbuf.empty() || !record.empty() || field_started) end_record();

  Table t;
  t.name = std::move(name);
  if (records.empty()) return t;
  t.header = std::move(records.front());
  for (auto& h : t.header) h = std::string(trim(h));
  t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
  return t;
}

inline Table read_table(const std::filesystem::path& dir, const std::string& file) {
  const auto path = dir / file;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingTable("feed is missing " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(file, ss.str());
}

// "HH:MM:SS" with HH possibly beyond 24; empty means untimed.
inline std::optional<long> parse_time(const Table& t, std::size_t row, std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long parts[3] = {0, 0, 0};
  std::size_t part = 0;
  const char* p = s.data();
  const char* end = s.data() + s.size();
  while (p < end && part < 3) {
    auto [next, ec] = std::from_chars(p, end, parts[part]);
    if (ec != std::errc{} || next == p) break;
    ++part;
    p = next;
    if (p < end && *p == ':') ++p;
    else break;
  }
  if (part != 3 || p != end || parts[1] > 59 || parts[2] > 59 || parts[0] < 0) {
    throw MalformedRow(t.name, row + 1, "bad time '" + std::string(s) + "'");
  }
  return parts[0] * 3600 + parts[1] * 60 + parts[2];
}

inline double parse_double(const Table& t, std::size_t row, std::string_view s, const char* what) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw MalformedRow(t.name, row + 1, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

inline long parse_long(const Table& t, std::size_t row, std::string_view s, const char* what) {
  s = trim(s);
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw MalformedRow(t.name, row + 1, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

// Basic and extended GTFS route types onto line modes. Rail-like types become
// subway; everything else rides as bus.
inline LineMode mode_for_route_type(long type) {
  switch (type) {
    case 0: case 1: case 2: case 5: case 6: case 7: case 12:
      return LineMode::subway;
    default:
      break;
  }
  if ((type >= 100 && type < 200) || (type >= 400 && type < 500) || (type >= 900 && type < 1000) ||
      (type >= 1300 && type < 1500)) {
    return LineMode::subway;
  }
  return LineMode::bus;
}

struct TimedStop {
  std::string station;
  std::optional<long> arrival;
  std::optional<long> departure;
};

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace gtfs

// Build a network from a GTFS static feed. One line per route, following the
// route's longest trip; hop times are medians over the route's trips that
// serve the same consecutive stop pair.
inline TransitNetwork import_gtfs(const std::filesystem::path& feed_directory) {
  using namespace gtfs;
  const Table stops = read_table(feed_directory, "stops.txt");
  const Table routes = read_table(feed_directory, "routes.txt");
  const Table trips = read_table(feed_directory, "trips.txt");
  const Table stop_times = read_table(feed_directory, "stop_times.txt");
  if (stops.rows.empty() || routes.rows.empty() || trips.rows.empty() || stop_times.rows.empty()) {
    throw EmptyFeed("feed has an empty stops, routes, trips or stop_times table");
  }

  // --- stations
  const auto c_stop_id = stops.require_column("stop_id");
  const auto c_stop_name = stops.require_column("stop_name");
  const auto c_lat = stops.require_column("stop_lat");
  const auto c_lon = stops.require_column("stop_lon");
  const auto c_parent = stops.column("parent_station");

  std::unordered_map<std::string, std::string> station_of_stop;
  std::vector<Station> stations;
  std::unordered_map<std::string, std::size_t> station_pos;
  std::vector<std::pair<std::string, std::string>> children;  // (child, parent)
  for (std::size_t r = 0; r < stops.rows.size(); ++r) {
    const std::string id(trim(stops.field(r, c_stop_id)));
    if (id.empty()) throw MalformedRow(stops.name, r + 1, "empty stop_id");
    const std::string parent(trim(stops.field(r, c_parent)));
    if (!parent.empty()) {
      children.emplace_back(id, parent);
      continue;
    }
    Station s;
    s.id = id;
    s.name = std::string(trim(stops.field(r, c_stop_name)));
    s.location = {parse_double(stops, r, stops.field(r, c_lat), "stop_lat"),
                  parse_double(stops, r, stops.field(r, c_lon), "stop_lon")};
    if (!station_pos.emplace(id, stations.size()).second) throw DuplicateId("duplicate stop_id '" + id + "'");
    station_of_stop[id] = id;
    stations.push_back(std::move(s));
  }
  for (const auto& [child, parent] : children) {
    auto it = station_pos.find(parent);
    if (it == station_pos.end()) {
      throw DanglingReference("stop '" + child + "' names missing parent_station '" + parent + "'");
    }
    if (station_of_stop.contains(child)) throw DuplicateId("duplicate stop_id '" + child + "'");
    station_of_stop[child] = parent;
    stations[it->second].aliases.push_back(child);
  }
  // Disambiguate repeated stop names so canonical names stay unique.
  {
    std::set<std::string> used;
    for (auto& s : stations) {
      if (!used.insert(normalize_name(s.name)).second) {
        s.name += " (" + s.id + ")";
        used.insert(normalize_name(s.name));
      }
    }
  }

  // --- stop sequences per trip
  const auto c_st_trip = stop_times.require_column("trip_id");
  const auto c_st_stop = stop_times.require_column("stop_id");
  const auto c_st_seq = stop_times.require_column("stop_sequence");
  const auto c_st_arr = stop_times.require_column("arrival_time");
  const auto c_st_dep = stop_times.require_column("departure_time");
  std::unordered_map<std::string, std::vector<std::pair<long, TimedStop>>> raw_by_trip;
  for (std::size_t r = 0; r < stop_times.rows.size(); ++r) {
    const std::string trip(trim(stop_times.field(r, c_st_trip)));
    const std::string stop(trim(stop_times.field(r, c_st_stop)));
    auto st = station_of_stop.find(stop);
    if (st == station_of_stop.end()) throw MalformedRow(stop_times.name, r + 1, "unknown stop_id '" + stop + "'");
    const long seq = parse_long(stop_times, r, stop_times.field(r, c_st_seq), "stop_sequence");
    TimedStop ts{st->second, parse_time(stop_times, r, stop_times.field(r, c_st_arr)),
                 parse_time(stop_times, r, stop_times.field(r, c_st_dep))};
    if (!ts.arrival) ts.arrival = ts.departure;
    if (!ts.departure) ts.departure = ts.arrival;
    raw_by_trip[trip].emplace_back(seq, std::move(ts));
  }

  auto station_sequence = [](std::vector<std::pair<long, TimedStop>>& raw) {
    std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<TimedStop> seq;
    std::set<std::string> seen;
    for (auto& [_, ts] : raw) {
      if (!seq.empty() && seq.back().station == ts.station) {
        // Consecutive child stops of one station.
        if (ts.departure) seq.back().departure = ts.departure;
        continue;
      }
      // Loop trips are cut where they return to an earlier station.
      if (!seen.insert(ts.station).second) break;
      seq.push_back(std::move(ts));
    }
    return seq;
  };

  // --- trips grouped by route, in trips.txt order
  const auto c_trip_route = trips.require_column("route_id");
  const auto c_trip_id = trips.require_column("trip_id");
  std::unordered_map<std::string, std::vector<std::vector<TimedStop>>> trips_by_route;
  for (std::size_t r = 0; r < trips.rows.size(); ++r) {
    const std::string route(trim(trips.field(r, c_trip_route)));
    const std::string trip(trim(trips.field(r, c_trip_id)));
    auto it = raw_by_trip.find(trip);
    if (it == raw_by_trip.end()) continue;
    trips_by_route[route].push_back(station_sequence(it->second));
  }

  // --- lines
  const auto c_route_id = routes.require_column("route_id");
  const auto c_short = routes.column("route_short_name");
  const auto c_type = routes.require_column("route_type");
  std::vector<Line> lines;
  std::set<std::pair<std::string, std::string>> labels;
  for (std::size_t r = 0; r < routes.rows.size(); ++r) {
    const std::string route_id(trim(routes.field(r, c_route_id)));
    const LineMode mode = mode_for_route_type(parse_long(routes, r, routes.field(r, c_type), "route_type"));
    auto it = trips_by_route.find(route_id);
    if (it == trips_by_route.end()) continue;
    const auto& route_trips = it->second;
    const std::vector<TimedStop>* rep = nullptr;
    for (const auto& t : route_trips) {
      if (!rep || t.size() > rep->size()) rep = &t;
    }
    if (!rep || rep->size() < 2) continue;

    Line line;
    line.id = route_id;
    line.mode = mode;
    line.label = std::string(trim(routes.field(r, c_short)));
    if (line.label.empty()) line.label = route_id;
    if (!labels.emplace(std::string(leg_mode_term(mode)), normalize_name(line.label)).second) {
      line.label += " (" + route_id + ")";
      labels.emplace(std::string(leg_mode_term(mode)), normalize_name(line.label));
    }
    for (const auto& ts : *rep) line.stops.push_back(ts.station);

    bool reverse_seen = false;
    for (std::size_t k = 0; k + 1 < rep->size(); ++k) {
      const std::string& a = (*rep)[k].station;
      const std::string& b = (*rep)[k + 1].station;
      std::vector<double> samples;
      for (const auto& t : route_trips) {
        for (std::size_t m = 0; m + 1 < t.size(); ++m) {
          if (t[m].station == a && t[m + 1].station == b && t[m].departure && t[m + 1].arrival) {
            samples.push_back(static_cast<double>(*t[m + 1].arrival - *t[m].departure));
          }
          if (t[m].station == b && t[m + 1].station == a) reverse_seen = true;
        }
      }
      double hop = samples.empty() ? 0.0 : median(std::move(samples));
      if (hop <= 0.0) {
        // Untimed or zero-length hop: estimate from distance at a nominal
        // vehicle speed (10 m/s rail, 5 m/s bus).
        const double speed = mode == LineMode::subway ? 10.0 : 5.0;
        const auto& sa = stations[station_pos.at(a)];
        const auto& sb = stations[station_pos.at(b)];
        hop = std::max(1.0, std::round(haversine_m(sa.location, sb.location) / speed));
      }
      line.hop_times_s.push_back(hop);
    }
    line.bidirectional = reverse_seen;
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw EmptyFeed("feed has no trip with two or more stops");

  return TransitNetwork(std::move(stations), std::move(lines));
}

}  // namespace detour
