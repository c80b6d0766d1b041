#include "detour/disruption.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace detour {
namespace {

using testing::net_toy;

TEST(Compile, AvoidedStation) {
  const auto k = compile(net_toy(), DisruptionSpec{{}, {"C"}, {}});
  EXPECT_EQ(k.forbidden_stations, (std::set<std::string>{"C"}));
  EXPECT_TRUE(k.disabled_lines.empty());
}

TEST(Compile, DisabledLineAndZone) {
  // E sits at (40.712, -74.008); the box excludes the x = -74.000 column.
  const auto k = compile(net_toy(), DisruptionSpec{{"R"}, {}, {{40.711, -74.009, 40.713, -74.007}}});
  EXPECT_EQ(k.forbidden_stations, (std::set<std::string>{"E"}));
  EXPECT_EQ(k.disabled_lines, (std::set<std::string>{"R"}));
}

TEST(Compile, EmptySpecGivesEmptyConstraints) {
  const auto k = compile(net_toy(), DisruptionSpec{});
  EXPECT_EQ(k, EffectiveConstraints{});
}

TEST(Compile, NamesAreNormalized) {
  const auto k = compile(net_toy(), DisruptionSpec{{" g "}, {"  c"}, {}});
  EXPECT_EQ(k.forbidden_stations, (std::set<std::string>{"C"}));
  EXPECT_EQ(k.disabled_lines, (std::set<std::string>{"G"}));
}

TEST(Compile, Errors) {
  EXPECT_THROW(compile(net_toy(), DisruptionSpec{{}, {"Atlantis"}, {}}), UnknownStation);
  EXPECT_THROW(compile(net_toy(), DisruptionSpec{{"Z"}, {}, {}}), UnknownLine);
  EXPECT_THROW(compile(net_toy(), DisruptionSpec{{}, {}, {{41, -74, 40, -73}}}), InvalidZone);
}

TEST(Compile, ForbiddenIsUnionOfSources) {
  std::mt19937_64 rng(11);
  const auto net = net_toy();
  std::uniform_real_distribution<double> lat(40.69, 40.74), lon(-74.012, -73.995);
  for (int trial = 0; trial < 100; ++trial) {
    double a = lat(rng), b = lat(rng), c = lon(rng), d = lon(rng);
    DangerZone z{std::min(a, b), std::min(c, d), std::max(a, b), std::max(c, d)};
    const auto k = compile(net, DisruptionSpec{{}, {"B"}, {z}});
    auto expected = stations_in_zone(net, z);
    expected.insert("B");
    EXPECT_EQ(k.forbidden_stations, expected);
  }
}

TEST(DisruptionJson, RoundTripAndStrictness) {
  DisruptionSpec spec{{"R"}, {"C"}, {{40.0, -74.1, 40.1, -74.0}}};
  EXPECT_EQ(disruption_from_json(disruption_to_json(spec)), spec);
  EXPECT_EQ(disruption_from_json(json::object()), DisruptionSpec{});
  EXPECT_THROW(disruption_from_json(json::parse(R"({"closures":[]})")), SchemaError);
  EXPECT_THROW(disruption_from_json(json::parse(R"({"danger_zones":[{"min_lat":1,"min_lon":0,"max_lat":0,"max_lon":1}]})")),
               InvalidZone);
}

}  // namespace
}  // namespace detour
