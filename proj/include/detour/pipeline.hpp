#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "detour/digest.hpp"
#include "detour/llm.hpp"
#include "detour/route.hpp"
#include "detour/scenario.hpp"

namespace detour {

enum class PipelineMode { two_stage, single_stage };
enum class MapMode { with_maps, without_maps };

inline std::string_view to_string(PipelineMode m) { return m == PipelineMode::two_stage ? "two-stage" : "single-stage"; }
inline std::string_view to_string(MapMode m) { return m == MapMode::with_maps ? "with" : "without"; }

inline std::optional<PipelineMode> parse_pipeline_mode(std::string_view s) {
  if (s == "two-stage") return PipelineMode::two_stage;
  if (s == "single-stage") return PipelineMode::single_stage;
  return std::nullopt;
}

inline std::optional<MapMode> parse_map_mode(std::string_view s) {
  if (s == "with" || s == "with-maps") return MapMode::with_maps;
  if (s == "without" || s == "without-maps") return MapMode::without_maps;
  return std::nullopt;
}

inline constexpr std::string_view kPromptTemplateVersion = "planner-summary/1";

inline const std::string& planner_system_text() {
  static const std::string text =
      "You are an alternative path-finding agent for public transit. Before every recommendation, consult your "
      "knowledge base: the transit maps attached to the request, or what you know of the network when no map is "
      "attached.\n"
      "Put safety first and efficiency second. Treat every disruption, closure and dangerous station or area in "
      "the request as off limits. Passing through a dangerous station is a safety risk even if you stay on the "
      "train and never get off there, so choose lines that do not run through it.\n"
      "Follow any additional instructions appended to the request. Describe the route leg by leg: the mode of "
      "transport, the line, and the stations where each leg starts and ends, including every walking or biking "
      "segment.";
  return text;
}

inline const std::string& summary_system_text() {
  static const std::string text =
      "You are a route summary expert. Convert the route described in the user's text into the standard format "
      "below. Reply with exactly one JSON object and nothing else: no explanation, no code fences, no text before "
      "or after it. Your reply is read by a program.\n"
      "Format:\n" +
      std::string(kRouteGrammar) +
      "\n"
      "Accepted transportation terms for \"mode\" are subway (train is also accepted), bus, walk and bike. Every "
      "segment of the route must appear as a leg, including walking and biking segments, for example "
      "{\"mode\":\"walk\",\"from\":\"Times Sq-42 St\",\"to\":\"42 St-Port Authority Bus Terminal\"}. Give \"line\" "
      "for subway and bus legs only. Use station names for \"from\" and \"to\", and make each leg start where the "
      "previous one ended.";
  return text;
}

// Names the prompt templates in results so runs can cite what they used.
inline std::string prompt_template_hash() {
  return sha256_hex(std::string(kPromptTemplateVersion) + "\n" + planner_system_text() + "\n" + summary_system_text());
}

namespace pipeline_detail {

inline Attachment read_image(const ImageRef& ref) {
  std::string bytes;
  try {
    bytes = detail::read_file(ref.path);
  } catch (const std::runtime_error&) {
    throw MissingAttachmentFile("cannot read attachment '" + ref.path + "'");
  }
  return Attachment{ref.media_type, std::move(bytes), ref.caption};
}

inline std::string planner_user_text(const Scenario& s) {
  std::string text = s.query;
  for (const auto& i : s.instructions) text += "\n" + i;
  return text;
}

}  // namespace pipeline_detail

// Maps come first and only with maps; the query's own images always follow.
inline PromptBundle build_planner_prompt(const Scenario& s, MapMode maps) {
  PromptBundle b;
  b.system_text = planner_system_text();
  b.user_text = pipeline_detail::planner_user_text(s);
  if (maps == MapMode::with_maps) {
    for (const auto& m : s.maps) b.attachments.push_back(pipeline_detail::read_image(m));
  }
  for (const auto& a : s.attachments) b.attachments.push_back(pipeline_detail::read_image(a));
  return b;
}

inline PromptBundle build_summary_prompt(std::string_view plan_text) {
  if (is_blank(plan_text)) throw EmptyPlan("the planner returned no text to summarize");
  return PromptBundle{summary_system_text(), std::string(plan_text), {}};
}

// One agent with both sets of instructions, planner first.
inline PromptBundle build_single_stage_prompt(const Scenario& s, MapMode maps) {
  PromptBundle b = build_planner_prompt(s, maps);
  b.system_text = planner_system_text() + "\n\n" + summary_system_text();
  return b;
}

struct PipelineResult {
  std::string plan_text;
  std::string summary_text;
  ParseResult parsed;
};

// `summarizer` defaults to the planner's provider.
inline PipelineResult run_pipeline(const Scenario& s, const ProviderConfig& planner, PipelineMode mode, MapMode maps,
                                   TranscriptStore* store, IoMode io, const InvokeContext& ctx,
                                   const ProviderConfig* summarizer = nullptr) {
  PipelineResult r;
  if (mode == PipelineMode::single_stage) {
    r.plan_text = invoke(planner, build_single_stage_prompt(s, maps), store, io, ctx);
    r.summary_text = r.plan_text;
  } else {
    r.plan_text = invoke(planner, build_planner_prompt(s, maps), store, io, ctx);
    r.summary_text = invoke(summarizer ? *summarizer : planner, build_summary_prompt(r.plan_text), store, io, ctx);
  }
  r.parsed = parse_route(r.summary_text);
  return r;
}

}  // namespace detour
