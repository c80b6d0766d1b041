#include "detour/route.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace detour {
namespace {

const FormatViolation* violation(const ParseResult& r) { return std::get_if<FormatViolation>(&r); }

TEST(ParseRoute, SingleLeg) {
  const auto r = parse_route(R"({"legs":[{"mode":"subway","line":"G","from":"A","to":"D"}]})");
  ASSERT_TRUE(is_route(r));
  const Route& route = std::get<Route>(r);
  ASSERT_EQ(route.legs.size(), 1u);
  EXPECT_EQ(route.legs[0], (Leg{"subway", "G", "A", "D"}));
}

TEST(ParseRoute, EmptyLegsIsValid) {
  const auto r = parse_route("  {\"legs\":[]}\n");
  ASSERT_TRUE(is_route(r));
  EXPECT_TRUE(std::get<Route>(r).empty());
}

TEST(ParseRoute, ProseAroundJson) {
  const auto r = parse_route(R"(Sure! Here is your route: {"legs":[{"mode":"walk","from":"A","to":"B"}]})");
  ASSERT_TRUE(violation(r));
  EXPECT_EQ(violation(r)->reason, ViolationReason::ExtraProse);
  EXPECT_FALSE(violation(r)->offending_text.empty());
}

TEST(ParseRoute, FencedJsonIsExtraProse) {
  const auto r = parse_route("```json\n{\"legs\":[]}\n```");
  ASSERT_TRUE(violation(r));
  EXPECT_EQ(violation(r)->reason, ViolationReason::ExtraProse);
}

TEST(ParseRoute, PureProseIsNotAnObject) {
  const auto r = parse_route("Take the G train from A to D.");
  ASSERT_TRUE(violation(r));
  EXPECT_EQ(violation(r)->reason, ViolationReason::NotAnObject);
  EXPECT_EQ(violation(parse_route("[1,2]"))->reason, ViolationReason::NotAnObject);
  EXPECT_EQ(violation(parse_route(""))->reason, ViolationReason::NotAnObject);
}

TEST(ParseRoute, BadModeTerm) {
  const auto r = parse_route(R"({"legs":[{"mode":"teleport","from":"A","to":"D"}]})");
  ASSERT_TRUE(violation(r));
  EXPECT_EQ(violation(r)->reason, ViolationReason::BadModeTerm);
}

TEST(ParseRoute, MissingFieldAndEmptyName) {
  EXPECT_EQ(violation(parse_route(R"({"legs":[{"mode":"subway","from":"A","to":"D"}]})"))->reason,
            ViolationReason::MissingField);
  EXPECT_EQ(violation(parse_route(R"({"legs":[{"mode":"walk","to":"D"}]})"))->reason, ViolationReason::MissingField);
  EXPECT_EQ(violation(parse_route(R"({"route":[]})"))->reason, ViolationReason::NotAnObject);
  EXPECT_EQ(violation(parse_route(R"({"legs":[{"mode":"walk","from":" ","to":"D"}]})"))->reason,
            ViolationReason::EmptyName);
}

TEST(ParseRoute, HighestPriorityReasonWins) {
  const auto r = parse_route(
      R"({"legs":[{"mode":"walk","from":"","to":"D"},{"mode":"boat","from":"A","to":"B"},{"mode":"bus","from":"A","to":"B"}]})");
  ASSERT_TRUE(violation(r));
  EXPECT_EQ(violation(r)->reason, ViolationReason::BadModeTerm);
}

TEST(ParseRoute, ModeTermsAreCanonicalized) {
  const auto r = parse_route(R"({"legs":[{"mode":"Train","line":"7","from":"A","to":"B"},{"mode":"BIKE","from":"B","to":"C"}]})");
  ASSERT_TRUE(is_route(r));
  EXPECT_EQ(std::get<Route>(r).legs[0].mode, "subway");
  EXPECT_EQ(std::get<Route>(r).legs[1].mode, "bike");
  EXPECT_FALSE(std::get<Route>(r).legs[1].line.has_value());
}

TEST(SerializeRoute, CanonicalForm) {
  EXPECT_EQ(serialize_route(Route{}), R"({"legs":[]})");
  Route r{{Leg{"walk", std::nullopt, "A", "B"}, Leg{"subway", "G", "B", "D"}}};
  EXPECT_EQ(serialize_route(r),
            R"({"legs":[{"mode":"walk","from":"A","to":"B"},{"mode":"subway","line":"G","from":"B","to":"D"}]})");
  EXPECT_THROW(serialize_route(Route{{Leg{"train", "G", "A", "B"}}}), InvariantViolation);
  EXPECT_THROW(serialize_route(Route{{Leg{"bus", std::nullopt, "A", "B"}}}), InvariantViolation);
}

using testing::random_route;

TEST(RouteProperty, ParseSerializeRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Route r = random_route(rng);
    const std::string text = serialize_route(r);
    const auto parsed = parse_route(text);
    ASSERT_TRUE(is_route(parsed)) << text;
    ASSERT_EQ(std::get<Route>(parsed), r) << text;
    EXPECT_EQ(serialize_route(std::get<Route>(parsed)), text);
  }
}

TEST(RouteProperty, ParseIsTotal) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "{}[]\":,legsmodewalk \\ubx0\n";
  std::uniform_int_distribution<std::size_t> len(0, 60), ch(0, alphabet.size() - 1), byte(0, 255);
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    for (std::size_t k = len(rng); k > 0; --k) s += i % 3 == 0 ? static_cast<char>(byte(rng)) : alphabet[ch(rng)];
    EXPECT_NO_THROW(parse_route(s));
  }
  // Mutations of a valid document.
  const std::string base = serialize_route(Route{{Leg{"subway", "G", "A", "D"}}});
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::string cut = base.substr(0, i);
    EXPECT_NO_THROW(parse_route(cut));
    EXPECT_FALSE(is_route(parse_route(cut)));
  }
}

TEST(ValidateChaining, Gaps) {
  EXPECT_TRUE(validate_chaining(Route{{Leg{"walk", {}, "A", "B"}, Leg{"walk", {}, "B", "C"}}}).empty());
  const auto gaps = validate_chaining(Route{{Leg{"walk", {}, "A", "B"}, Leg{"subway", "G", "E", "D"}}});
  ASSERT_EQ(gaps.size(), 1u);
  EXPECT_EQ(gaps[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_TRUE(validate_chaining(Route{}).empty());
  EXPECT_TRUE(validate_chaining(Route{{Leg{"walk", {}, "A", "Times  sq"}, Leg{"walk", {}, "times sq", "C"}}}).empty());
}

}  // namespace
}  // namespace detour
