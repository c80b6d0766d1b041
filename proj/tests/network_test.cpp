#include "detour/network.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace detour {
namespace {

using testing::net_toy;

// Independent great-circle distance (spherical law of cosines, long double).
long double cosine_law_m(LatLon a, LatLon b) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double p1 = a.lat * pi / 180, p2 = b.lat * pi / 180, dl = (b.lon - a.lon) * pi / 180;
  long double c = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
  c = std::fmin(1.0L, std::fmax(-1.0L, c));
  return 6371008.8L * std::acos(c);
}

TEST(LoadNetwork, NetToyFixture) {
  const auto net = net_toy();
  EXPECT_EQ(net.stations().size(), 5u);
  ASSERT_EQ(net.lines().size(), 2u);
  EXPECT_EQ(net.line("R").stops, (std::vector<std::string>{"A", "B", "C", "D"}));
  EXPECT_EQ(net.line("G").hop_times_s, (std::vector<double>{180, 180}));
  EXPECT_DOUBLE_EQ(net.walk_link_threshold_m(), 1000.0);
  EXPECT_DOUBLE_EQ(net.walking_speed_mps(), 1.25);
}

TEST(LoadNetwork, DanglingStopReference) {
  const char* doc = R"({"stations":[{"id":"A","name":"A","lat":0,"lon":0}],
    "lines":[{"id":"L","label":"L","mode":"subway","stops":["A","Z"],"hop_times_s":[60],"bidirectional":true}]})";
  EXPECT_THROW(load_network(doc), DanglingReference);
}

TEST(LoadNetwork, SingleStationNoLinesIsValid) {
  const auto net = load_network(R"({"stations":[{"id":"A","name":"Alone","lat":1,"lon":2}],"lines":[]})");
  EXPECT_EQ(net.stations().size(), 1u);
  EXPECT_TRUE(net.lines().empty());
}

TEST(LoadNetwork, RejectsUnknownKeysAndBadFields) {
  EXPECT_THROW(load_network(R"({"stations":[],"extra":1})"), SchemaError);
  EXPECT_THROW(load_network(R"({"stations":[{"id":"A","name":"A","lat":0,"lon":0,"zone":3}]})"), SchemaError);
  EXPECT_THROW(load_network(R"({"stations":[{"id":"A","name":"A","lat":91,"lon":0}]})"), SchemaError);
  EXPECT_THROW(load_network(R"({"stations":[{"id":"A","name":"  ","lat":0,"lon":0}]})"), SchemaError);
  EXPECT_THROW(load_network(R"({"stations":[{"id":"A","name":"A","lat":"x","lon":0}]})"), SchemaError);
  EXPECT_THROW(load_network("not json"), SchemaError);
  EXPECT_THROW(load_network(R"({"lines":[]})"), SchemaError);
}

TEST(LoadNetwork, LineShapeChecks) {
  const std::string stations = R"("stations":[{"id":"A","name":"A","lat":0,"lon":0},{"id":"B","name":"B","lat":0,"lon":0.01}])";
  auto with_line = [&](const std::string& line) { return "{" + stations + R"(,"lines":[)" + line + "]}"; };
  EXPECT_THROW(load_network(with_line(R"({"id":"L","label":"L","mode":"subway","stops":["A","B"],"hop_times_s":[0],"bidirectional":true})")),
               SchemaError);
  EXPECT_THROW(load_network(with_line(R"({"id":"L","label":"L","mode":"subway","stops":["A","B"],"hop_times_s":[1,2],"bidirectional":true})")),
               SchemaError);
  EXPECT_THROW(load_network(with_line(R"({"id":"L","label":"L","mode":"subway","stops":["A"],"hop_times_s":[],"bidirectional":true})")),
               SchemaError);
  EXPECT_THROW(load_network(with_line(R"({"id":"L","label":"L","mode":"ferry","stops":["A","B"],"hop_times_s":[5],"bidirectional":true})")),
               SchemaError);
  EXPECT_THROW(load_network(with_line(R"({"id":"L","label":"L","mode":"bus","stops":["A","B","A"],"hop_times_s":[5,5],"bidirectional":true})")),
               SchemaError);
}

TEST(LoadNetwork, DuplicateIdsAndNames) {
  EXPECT_THROW(load_network(R"({"stations":[{"id":"A","name":"A","lat":0,"lon":0},{"id":"A","name":"B","lat":0,"lon":0}]})"),
               DuplicateId);
  // Names collide after normalization.
  EXPECT_THROW(load_network(R"({"stations":[{"id":"A","name":"42 St","lat":0,"lon":0},{"id":"B","name":" 42-st ","lat":0,"lon":0}]})"),
               DuplicateId);
  const std::string two = R"("stations":[{"id":"A","name":"A","lat":0,"lon":0},{"id":"B","name":"B","lat":0,"lon":0.01}])";
  EXPECT_THROW(load_network("{" + two + R"(,"lines":[
      {"id":"L1","label":"7","mode":"subway","stops":["A","B"],"hop_times_s":[5],"bidirectional":true},
      {"id":"L1","label":"8","mode":"subway","stops":["A","B"],"hop_times_s":[5],"bidirectional":true}]})"),
               DuplicateId);
  EXPECT_THROW(load_network("{" + two + R"(,"lines":[
      {"id":"L1","label":"7","mode":"subway","stops":["A","B"],"hop_times_s":[5],"bidirectional":true},
      {"id":"L2","label":"7","mode":"subway","stops":["A","B"],"hop_times_s":[5],"bidirectional":true}]})"),
               DuplicateId);
  // Same label on different modes is fine.
  EXPECT_NO_THROW(load_network("{" + two + R"(,"lines":[
      {"id":"L1","label":"7","mode":"subway","stops":["A","B"],"hop_times_s":[5],"bidirectional":true},
      {"id":"L2","label":"7","mode":"bus","stops":["A","B"],"hop_times_s":[5],"bidirectional":true}]})"));
}

TEST(LoadNetwork, ExportReloadIsIdentity) {
  const auto net = net_toy();
  EXPECT_EQ(load_network(network_to_json(net).dump()), net);
}

TEST(ResolveStation, NormalizesWhitespaceCaseAndHyphens) {
  const auto net = load_network(R"({"stations":[
    {"id":"cp","name":"Cathedral Parkway","aliases":["110 St"],"lat":40.80,"lon":-73.96},
    {"id":"fl","name":"Flushing-Main St","lat":40.76,"lon":-73.83},
    {"id":"x","name":"Times Sq","aliases":["42 St"],"lat":40.75,"lon":-73.98},
    {"id":"y","name":"Port Authority","aliases":["42 St"],"lat":40.757,"lon":-73.99},
    {"id":"cafe","name":"Café Plaza","lat":40.7,"lon":-73.9}]})");
  EXPECT_EQ(resolve_station(net, "cathedral  parkway"), "cp");
  EXPECT_EQ(resolve_station(net, "  CATHEDRAL PARKWAY "), "cp");
  EXPECT_EQ(resolve_station(net, "Flushing Main St"), "fl");
  EXPECT_EQ(resolve_station(net, "flushing - main st"), "fl");
  EXPECT_EQ(resolve_station(net, "110 st"), "cp");
  // Decomposed e + combining acute matches the precomposed name.
  EXPECT_EQ(resolve_station(net, "Cafe\xCC\x81 plaza"), "cafe");
  try {
    resolve_station(net, "42 St");
    FAIL() << "expected Ambiguous";
  } catch (const Ambiguous& e) {
    EXPECT_EQ(e.candidates(), (std::vector<std::string>{"x", "y"}));
  }
}

TEST(ResolveStation, CanonicalNameBeatsAlias) {
  const auto net = load_network(R"({"stations":[
    {"id":"a","name":"Union Sq","lat":40.73,"lon":-73.99},
    {"id":"b","name":"14 St","aliases":["Union Sq"],"lat":40.735,"lon":-73.99}]})");
  EXPECT_EQ(resolve_station(net, "union sq"), "a");
}

TEST(ResolveStation, NotFound) { EXPECT_THROW(resolve_station(net_toy(), "Atlantis"), NotFound); }

TEST(ResolveStation, EveryCanonicalNameRoundTrips) {
  const auto net = net_toy();
  for (const auto& s : net.stations()) EXPECT_EQ(resolve_station(net, s.name), s.id);
}

TEST(WalkTime, IdentityAndKnownDistances) {
  const auto net = net_toy();
  EXPECT_EQ(walk_time(net, "A", "A"), 0.0);
  // Independent oracle: 3335.9 m / 1.25 m/s = 2668.7 s.
  const double ad = static_cast<double>(cosine_law_m({40.700, -74.000}, {40.730, -74.000}) / 1.25L);
  EXPECT_NEAR(ad, 2668.7, 0.1);
  EXPECT_NEAR(walk_time(net, "A", "D"), 2668.7, 2668.7 * 0.01);
  EXPECT_NEAR(walk_time(net, "A", "D"), ad, 1e-6);
  // A to E: 1495.1 m -> 1196.0 s.
  EXPECT_NEAR(walk_time(net, "A", "E"), 1196.0, 0.1);
  EXPECT_EQ(walk_time(net, "A", "B"), walk_time(net, "B", "A"));
  EXPECT_THROW(walk_time(net, "A", "Q"), UnknownStation);
}

TEST(WalkTime, SymmetryAndTriangleInequalityOnRandomPoints) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lat(-60, 60), lon(-179, 179);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Station> st;
    for (int i = 0; i < 3; ++i) st.push_back({std::to_string(i), "s" + std::to_string(i), {}, {lat(rng), lon(rng)}});
    const TransitNetwork net(st, {});
    const double ab = walk_time(net, "0", "1"), bc = walk_time(net, "1", "2"), ac = walk_time(net, "0", "2");
    EXPECT_EQ(ab, walk_time(net, "1", "0"));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ac, ab + bc + 1e-6 * (ab + bc));
    EXPECT_NEAR(ab * 1.25, static_cast<double>(cosine_law_m(st[0].location, st[1].location)), 1e-3);
  }
}

TEST(StationsInZone, BoxQueries) {
  const auto net = net_toy();
  EXPECT_EQ(stations_in_zone(net, {40.715, -74.005, 40.725, -73.995}), (std::set<std::string>{"C"}));
  EXPECT_TRUE(stations_in_zone(net, {10, -30, 11, -29}).empty());
  EXPECT_EQ(stations_in_zone(net, {-90, -180, 90, 180}).size(), 5u);
  // Boundary counts as inside.
  EXPECT_EQ(stations_in_zone(net, {40.720, -74.000, 40.720, -74.000}), (std::set<std::string>{"C"}));
  EXPECT_THROW(stations_in_zone(net, {41, -74, 40, -73}), InvalidZone);
}

TEST(LineSegment, ForwardReverseAndErrors) {
  const auto net = net_toy();
  EXPECT_EQ(line_segment(net, "R", "A", "C"), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(line_segment(net, "R", "D", "B"), (std::vector<std::string>{"D", "C", "B"}));
  EXPECT_EQ(line_segment(net, "R", "B", "B"), (std::vector<std::string>{"B"}));
  EXPECT_THROW(line_segment(net, "R", "A", "E"), NotOnLine);
  EXPECT_THROW(line_segment(net, "Q", "A", "B"), UnknownLine);

  auto one_way = load_network(R"({"stations":[{"id":"A","name":"A","lat":0,"lon":0},{"id":"B","name":"B","lat":0,"lon":0.01}],
    "lines":[{"id":"L","label":"L","mode":"bus","stops":["A","B"],"hop_times_s":[60],"bidirectional":false}]})");
  EXPECT_EQ(line_segment(one_way, "L", "A", "B").size(), 2u);
  EXPECT_THROW(line_segment(one_way, "L", "B", "A"), DirectionUnavailable);
}

TEST(LineSegment, ReverseEqualsReversedForward) {
  const auto net = net_toy();
  for (const auto& line : net.lines()) {
    for (const auto& x : line.stops) {
      for (const auto& y : line.stops) {
        auto fwd = line_segment(line, x, y);
        auto back = line_segment(line, y, x);
        std::reverse(back.begin(), back.end());
        EXPECT_EQ(fwd, back);
      }
    }
  }
}

TEST(SegmentSeconds, SumsHops) {
  const auto net = net_toy();
  EXPECT_DOUBLE_EQ(segment_seconds(net.line("G"), "A", "D"), 360.0);
  EXPECT_DOUBLE_EQ(segment_seconds(net.line("R"), "D", "B"), 240.0);
}

}  // namespace
}  // namespace detour
