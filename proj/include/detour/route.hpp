#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "detour/errors.hpp"
#include "detour/json_util.hpp"
#include "detour/text.hpp"

namespace detour {

// The summary grammar, exactly as it is shown to the summarizer.
inline constexpr std::string_view kRouteGrammar =
    R"({"legs":[{"mode":"<subway|bus|walk|bike>","line":"<line label; omit for walk and bike>","from":"<station>","to":"<station>"}]})";

// Mode terms a summary may use. "train" is read as "subway".
inline constexpr std::array<std::string_view, 5> kAcceptedModeTerms = {"subway", "train", "bus", "walk", "bike"};

inline bool mode_requires_line(std::string_view mode) { return mode == "subway" || mode == "bus"; }

inline std::optional<std::string> canonical_mode_term(std::string_view term) {
  std::string lower(trim(term));
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "train") return std::string("subway");
  if (lower == "subway" || lower == "bus" || lower == "walk" || lower == "bike") return lower;
  return std::nullopt;
}

struct Leg {
  std::string mode;                 // canonical: subway, bus, walk or bike
  std::optional<std::string> line;  // required for subway and bus
  std::string from;
  std::string to;

  friend bool operator==(const Leg&, const Leg&) = default;
};

struct Route {
  std::vector<Leg> legs;

  bool empty() const { return legs.empty(); }
  friend bool operator==(const Route&, const Route&) = default;
};

enum class ViolationReason { ExtraProse, NotAnObject, BadModeTerm, MissingField, EmptyName };

inline std::string_view to_string(ViolationReason r) {
  switch (r) {
    case ViolationReason::ExtraProse: return "ExtraProse";
    case ViolationReason::NotAnObject: return "NotAnObject";
    case ViolationReason::BadModeTerm: return "BadModeTerm";
    case ViolationReason::MissingField: return "MissingField";
    case ViolationReason::EmptyName: return "EmptyName";
  }
  return "NotAnObject";
}

struct FormatViolation {
  ViolationReason reason = ViolationReason::NotAnObject;
  std::string offending_text;

  friend bool operator==(const FormatViolation&, const FormatViolation&) = default;
};

// Outcome of reading a summary: a route, or the violation that was measured.
using ParseResult = std::variant<Route, FormatViolation>;

inline bool is_route(const ParseResult& r) { return std::holds_alternative<Route>(r); }

namespace detail {

inline std::string excerpt(std::string_view s, std::size_t max_len = 160) {
  s = trim(s);
  if (s.size() <= max_len) return std::string(s);
  std::size_t cut = max_len;
  // Do not split a UTF-8 sequence.
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return std::string(s.substr(0, cut)) + "...";
}

// End (exclusive) of the balanced {...} or [...] starting at `begin`, string
// literals respected; npos when unbalanced.
inline std::size_t balanced_end(std::string_view s, std::size_t begin) {
  std::vector<char> stack;
  bool in_string = false;
  for (std::size_t i = begin; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{' || c == '[') stack.push_back(c == '{' ? '}' : ']');
    else if (c == '}' || c == ']') {
      if (stack.empty() || stack.back() != c) return std::string_view::npos;
      stack.pop_back();
      if (stack.empty()) return i + 1;
    }
  }
  return std::string_view::npos;
}

inline bool contains_embedded_json(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '{' && s[i] != '[') continue;
    const std::size_t end = balanced_end(s, i);
    if (end == std::string_view::npos) continue;
    if (json::accept(s.substr(i, end - i))) return true;
  }
  return false;
}

struct LegCheck {
  std::optional<ViolationReason> reason;
  Leg leg;
};

inline LegCheck check_leg(const json& j) {
  LegCheck out;
  auto fail = [&](ViolationReason r) {
    if (!out.reason || r < *out.reason) out.reason = r;
  };
  if (!j.is_object()) {
    fail(ViolationReason::NotAnObject);
    return out;
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "mode" && key != "line" && key != "from" && key != "to") fail(ViolationReason::NotAnObject);
  }

  auto text_field = [&](const char* key, std::string& into) -> bool {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      fail(ViolationReason::MissingField);
      return false;
    }
    if (!it->is_string()) {
      fail(ViolationReason::NotAnObject);
      return false;
    }
    into = it->get<std::string>();
    return true;
  };

  std::string mode;
  if (text_field("mode", mode)) {
    if (auto canon = canonical_mode_term(mode)) out.leg.mode = *canon;
    else fail(ViolationReason::BadModeTerm);
  }

  if (auto it = j.find("line"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) fail(ViolationReason::NotAnObject);
    else if (!is_blank(it->get_ref<const std::string&>())) out.leg.line = it->get<std::string>();
  }
  if (mode_requires_line(out.leg.mode) && !out.leg.line) fail(ViolationReason::MissingField);

  if (text_field("from", out.leg.from) && is_blank(out.leg.from)) fail(ViolationReason::EmptyName);
  if (text_field("to", out.leg.to) && is_blank(out.leg.to)) fail(ViolationReason::EmptyName);
  return out;
}

}  // namespace detail

// Read a summary. Anything other than exactly one route object (whitespace
// aside) comes back as a FormatViolation carrying the highest-priority reason.
inline ParseResult parse_route(std::string_view text) {
  const std::string_view body = trim(text);
  json doc = json::parse(body.begin(), body.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    if (detail::contains_embedded_json(body)) return FormatViolation{ViolationReason::ExtraProse, detail::excerpt(body)};
    return FormatViolation{ViolationReason::NotAnObject, detail::excerpt(body)};
  }
  if (!doc.is_object()) return FormatViolation{ViolationReason::NotAnObject, detail::excerpt(body)};

  std::optional<FormatViolation> worst;
  auto note = [&](ViolationReason r, std::string excerpt_text) {
    if (!worst || r < worst->reason) worst = FormatViolation{r, std::move(excerpt_text)};
  };
  for (const auto& [key, _] : doc.items()) {
    if (key != "legs") note(ViolationReason::NotAnObject, "unexpected key '" + key + "'");
  }
  auto legs_it = doc.find("legs");
  if (legs_it == doc.end()) {
    note(ViolationReason::MissingField, detail::excerpt(body));
    return *worst;
  }
  if (!legs_it->is_array()) {
    note(ViolationReason::NotAnObject, detail::excerpt(legs_it->dump()));
    return *worst;
  }

  Route route;
  for (const auto& jl : *legs_it) {
    auto checked = detail::check_leg(jl);
    if (checked.reason) note(*checked.reason, detail::excerpt(jl.dump()));
    route.legs.push_back(std::move(checked.leg));
  }
  if (worst) return *worst;
  return route;
}

// Canonical single-line form: keys in mode, line, from, to order; `line`
// omitted when absent.
inline std::string serialize_route(const Route& route) {
  auto quoted = [](const std::string& s) {
    try {
      return json(s).dump();
    } catch (const json::type_error&) {
      throw InvariantViolation("route text is not valid UTF-8");
    }
  };
  std::string out = R"({"legs":[)";
  for (std::size_t i = 0; i < route.legs.size(); ++i) {
    const Leg& leg = route.legs[i];
    if (leg.mode != "subway" && leg.mode != "bus" && leg.mode != "walk" && leg.mode != "bike") {
      throw InvariantViolation("leg " + std::to_string(i) + " has non-canonical mode '" + leg.mode + "'");
    }
    if (leg.line && is_blank(*leg.line)) throw InvariantViolation("leg " + std::to_string(i) + " has a blank line");
    if (mode_requires_line(leg.mode) && !leg.line) {
      throw InvariantViolation("leg " + std::to_string(i) + " needs a line label");
    }
    if (is_blank(leg.from) || is_blank(leg.to)) throw InvariantViolation("leg " + std::to_string(i) + " has an empty name");
    if (i > 0) out += ',';
    out += R"({"mode":)" + quoted(leg.mode);
    if (leg.line) out += R"(,"line":)" + quoted(*leg.line);
    out += R"(,"from":)" + quoted(leg.from);
    out += R"(,"to":)" + quoted(leg.to);
    out += '}';
  }
  out += "]}";
  return out;
}

// Index pairs (i, i+1) where leg i does not end where leg i+1 starts.
inline std::vector<std::pair<std::size_t, std::size_t>> validate_chaining(const Route& route) {
  std::vector<std::pair<std::size_t, std::size_t>> gaps;
  for (std::size_t i = 0; i + 1 < route.legs.size(); ++i) {
    if (normalize_name(route.legs[i].to) != normalize_name(route.legs[i + 1].from)) gaps.emplace_back(i, i + 1);
  }
  return gaps;
}

}  // namespace detour
