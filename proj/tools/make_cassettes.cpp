// Writes the bundled synthetic cassettes: scripted planner and summary replies
// for every scenario, provider, pipeline mode and map mode, stored under the
// keys that a replay run computes.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detour.hpp"

namespace fs = std::filesystem;
using namespace detour;

namespace {

constexpr const char* kRecordedAt = "2024-05-01T17:30:00Z";

struct L {
  const char* mode;
  const char* line;  // "" for walk and bike
  const char* from;
  const char* to;
};

Route make_route(std::initializer_list<L> legs) {
  Route r;
  for (const auto& l : legs) {
    Leg leg{l.mode, std::string(l.line).empty() ? std::nullopt : std::optional<std::string>(l.line), l.from, l.to};
    r.legs.push_back(std::move(leg));
  }
  return r;
}

// Candidate answers per scenario. "oracle" is filled in from the router.
std::map<std::string, Route> candidates() {
  std::map<std::string, Route> c;
  c["s1_bad"] = make_route({{"subway", "1", "WTC Cortlandt", "Cathedral Parkway (110 St)"}});
  c["s1_disc"] = make_route({{"subway", "4", "Fulton St", "110 St (6)"},
                             {"walk", "", "110 St (6)", "Cathedral Parkway (110 St)"}});
  c["s7_bus"] = make_route({{"walk", "", "WTC Cortlandt", "Fulton St"},
                            {"subway", "4", "Fulton St", "Grand Central-42 St"},
                            {"walk", "", "Grand Central-42 St", "Madison Av/E 42 St"},
                            {"bus", "M4", "Madison Av/E 42 St", "Cathedral Pkwy/Broadway"},
                            {"walk", "", "Cathedral Pkwy/Broadway", "Cathedral Parkway (110 St)"}});
  c["s2_7"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "Times Sq-42 St"},
                          {"subway", "7", "Times Sq-42 St", "Flushing-Main St"}});
  c["s2_n"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "59 St-Columbus Circle"},
                          {"walk", "", "59 St-Columbus Circle", "57 St-7 Av"},
                          {"subway", "N", "57 St-7 Av", "Queensboro Plaza"},
                          {"subway", "7", "Queensboro Plaza", "Flushing-Main St"}});
  c["s2_unreach"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "5 Av/59 St"},
                                {"subway", "N", "5 Av/59 St", "Queensboro Plaza"},
                                {"subway", "7", "Queensboro Plaza", "Flushing-Main St"}});
  c["s3_shuttle"] = make_route({{"subway", "S", "Grand Central-42 St", "Times Sq-42 St"},
                                {"subway", "1", "Times Sq-42 St", "Cathedral Parkway (110 St)"}});
  c["s3_lex"] = make_route({{"subway", "6", "Grand Central-42 St", "96 St (6)"},
                            {"walk", "", "96 St (6)", "E 96 St/Lexington Av"},
                            {"bus", "M96", "E 96 St/Lexington Av", "W 96 St/Broadway"},
                            {"walk", "", "W 96 St/Broadway", "96 St (1/2/3)"},
                            {"subway", "1", "96 St (1/2/3)", "Cathedral Parkway (110 St)"}});
  c["s3_disc"] = make_route({{"subway", "7", "Grand Central-42 St", "59 St-Columbus Circle"},
                             {"subway", "1", "59 St-Columbus Circle", "Cathedral Parkway (110 St)"}});
  c["s4_7"] = make_route({{"subway", "7", "Grand Central-42 St", "Times Sq-42 St"},
                          {"subway", "1", "Times Sq-42 St", "Cathedral Parkway (110 St)"}});
  c["s4_ace"] = make_route({{"subway", "7", "Grand Central-42 St", "Times Sq-42 St"},
                            {"walk", "", "Times Sq-42 St", "42 St-Port Authority Bus Terminal"},
                            {"subway", "C", "42 St-Port Authority Bus Terminal", "Cathedral Pkwy-110 St (B/C)"},
                            {"walk", "", "Cathedral Pkwy-110 St (B/C)", "Cathedral Parkway (110 St)"}});
  c["s4_overcautious"] = c["s3_lex"];
  c["s5_7"] = c["s2_7"];
  c["s5_n"] = c["s2_n"];
  c["s5_disc"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "59 St-Columbus Circle"},
                             {"subway", "N", "59 St-Columbus Circle", "Queensboro Plaza"},
                             {"subway", "7", "Queensboro Plaza", "Flushing-Main St"}});
  c["s6_bike"] = make_route({{"bike", "", "Cathedral Parkway (110 St)", "59 St-Columbus Circle"},
                             {"subway", "A", "59 St-Columbus Circle", "42 St-Port Authority Bus Terminal"}});
  c["s6_times"] = make_route({{"bike", "", "Cathedral Parkway (110 St)", "Times Sq-42 St"},
                              {"walk", "", "Times Sq-42 St", "42 St-Port Authority Bus Terminal"}});
  c["s6_nobike"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "Times Sq-42 St"},
                               {"walk", "", "Times Sq-42 St", "42 St-Port Authority Bus Terminal"}});
  c["s6_disc"] = make_route({{"bike", "", "Cathedral Parkway (110 St)", "72 St (B/C)"},
                             {"subway", "E", "72 St (B/C)", "42 St-Port Authority Bus Terminal"}});
  c["s8_express"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "96 St (1/2/3)"},
                                {"subway", "2", "96 St (1/2/3)", "Times Sq-42 St"},
                                {"subway", "<7>", "Times Sq-42 St", "Flushing-Main St"}});
  c["s8_n"] = make_route({{"subway", "1", "Cathedral Parkway (110 St)", "59 St-Columbus Circle"},
                          {"walk", "", "59 St-Columbus Circle", "57 St-7 Av"},
                          {"subway", "N", "57 St-7 Av", "Queensboro Plaza"},
                          {"subway", "<7>", "Queensboro Plaza", "Flushing-Main St"}});
  c["s9_red"] = make_route({{"subway", "Red", "Shady Grove", "Fort Totten"},
                            {"subway", "Green", "Fort Totten", "Greenbelt"}});
  c["s9_orange"] = make_route({{"subway", "Red", "Shady Grove", "Farragut North"},
                               {"walk", "", "Farragut North", "Farragut West"},
                               {"subway", "Orange", "Farragut West", "L'Enfant Plaza"},
                               {"subway", "Green", "L'Enfant Plaza", "Greenbelt"}});
  c["s9_disc"] = make_route({{"subway", "Green", "Shady Grove", "Greenbelt"}});
  return c;
}

// Which candidate each provider answers with, per map mode.
struct Behaviour {
  std::map<std::string, std::string> with_maps;
  std::map<std::string, std::string> without_maps;
  std::set<std::string> single_stage_prose;  // single-stage replies wrapped in prose
  std::set<std::string> summary_rewrites;    // two-stage summaries that add their own reasoning
};

std::map<std::string, Behaviour> behaviours() {
  std::map<std::string, Behaviour> b;
  b["gpt"] = {{{"S1", "oracle"}, {"S2", "s2_n"}, {"S3", "oracle"}, {"S4", "s4_7"}, {"S5", "s5_disc"},
               {"S6", "s6_disc"}, {"S7", "s7_bus"}, {"S8", "s8_n"}, {"S9", "s9_red"}},
              {{"S1", "s1_bad"}, {"S2", "s2_7"}, {"S3", "s3_disc"}, {"S4", "s4_7"}, {"S5", "s5_7"},
               {"S6", "s6_nobike"}, {"S7", "s1_bad"}, {"S8", "s8_express"}, {"S9", "s9_red"}},
              {"S2", "S6", "S9"},
              {"S4"}};
  b["gemini"] = {{{"S1", "s1_bad"}, {"S2", "s2_unreach"}, {"S3", "s3_shuttle"}, {"S4", "s4_7"}, {"S5", "s5_7"},
                  {"S6", "s6_nobike"}, {"S7", "s1_bad"}, {"S8", "s8_express"}, {"S9", "s9_red"}},
                 {{"S1", "s1_bad"}, {"S2", "s2_unreach"}, {"S3", "s3_shuttle"}, {"S4", "s4_ace"}, {"S5", "s5_7"},
                  {"S6", "s6_nobike"}, {"S7", "s1_bad"}, {"S8", "s8_express"}, {"S9", "s9_disc"}},
                 {"S1", "S3", "S5", "S7", "S8"},
                 {}};
  b["claude"] = {{{"S1", "s1_disc"}, {"S2", "s2_unreach"}, {"S3", "s3_lex"}, {"S4", "s4_overcautious"},
                  {"S5", "s5_7"}, {"S6", "s6_bike"}, {"S7", "s7_bus"}, {"S8", "s8_n"}, {"S9", "oracle"}},
                 {{"S1", "s1_disc"}, {"S2", "s2_7"}, {"S3", "s3_lex"}, {"S4", "s4_7"}, {"S5", "s5_7"},
                  {"S6", "s6_bike"}, {"S7", "s1_disc"}, {"S8", "s8_n"}, {"S9", "s9_red"}},
                 {"S4", "S6"},
                 {}};
  return b;
}

std::string leg_sentence(const Leg& l) {
  if (l.mode == "walk") return "Walk from " + l.from + " to " + l.to + ".";
  if (l.mode == "bike") {
    return "Pick up a Citi Bike at the station near " + l.from + ", ride to " + l.to + " and dock it there.";
  }
  if (l.mode == "bus") return "Take the " + *l.line + " bus from " + l.from + " to " + l.to + ".";
  return "Take the " + *l.line + " train from " + l.from + " to " + l.to + ".";
}

std::string plan_prose(const std::string& provider, const Scenario& s, const Route& r) {
  std::string intro;
  if (provider == "gpt") {
    intro = "Here is a route that keeps you clear of the disruption you described.";
  } else if (provider == "gemini") {
    intro = "Sure! Based on the map, this is how I would get there.";
  } else {
    intro = "Safety comes first here, so this route stays away from the affected area.";
  }
  std::string text = intro + "\n\n";
  for (std::size_t i = 0; i < r.legs.size(); ++i) {
    text += std::to_string(i + 1) + ". " + leg_sentence(r.legs[i]) + "\n";
  }
  text += "\nYou arrive at " + s.destination + ".";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled synthetic cassettes"};
  std::string data_dir = DETOUR_DEFAULT_DATA_DIR;
  std::string out;
  app.add_option("--data", data_dir, "Data directory")->capture_default_str();
  app.add_option("--out", out, "Cassette directory (default: <data>/cassettes)");
  CLI11_PARSE(app, argc, argv);
  if (out.empty()) out = (fs::path(data_dir) / "cassettes").string();

  try {
    NetworkCache cache;
    const auto scenarios = load_scenarios((fs::path(data_dir) / "scenarios").string(), cache);
    const auto providers = load_providers((fs::path(data_dir) / "providers.json").string());
    const auto table = candidates();
    const auto plans = behaviours();
    fs::remove_all(out);
    TranscriptStore store(out);
    std::map<std::string, std::string> written;
    auto put = [&](const ProviderConfig& p, const PromptBundle& b, const std::string& text) {
      const std::string key = transcript_key(p, b);
      auto [it, fresh] = written.emplace(key, text);
      if (!fresh) {
        if (it->second != text) throw InvariantViolation("two different replies for one request key " + key);
        return;
      }
      store.put(Transcript{key, request_snapshot(p, b), text, kRecordedAt});
    };

    for (const auto& s : scenarios) {
      const ResolvedScenario rs = resolve_scenario(s, cache);
      const Route oracle = plan(*rs.network, rs.constraints, rs.origin_id, rs.destination_id, s.objective).route;
      for (const auto& p : providers) {
        const Behaviour& b = plans.at(p.name);
        for (MapMode m : {MapMode::with_maps, MapMode::without_maps}) {
          const std::string& pick = (m == MapMode::with_maps ? b.with_maps : b.without_maps).at(s.id);
          const Route route = pick == "oracle" ? oracle : table.at(pick);
          const std::string json_text = serialize_route(route);
          const std::string prose = plan_prose(p.name, s, route);

          put(p, build_planner_prompt(s, m), prose);
          std::string summary = json_text;
          if (b.summary_rewrites.contains(s.id)) {
            summary = "The suggested route conflicts with the request to stay away from the danger, so here is a "
                      "safer alternative:\n" +
                      serialize_route(table.at("s4_overcautious"));
          }
          put(p, build_summary_prompt(prose), summary);

          const std::string single =
              b.single_stage_prose.contains(s.id) ? prose + "\n\n```json\n" + json_text + "\n```" : json_text;
          put(p, build_single_stage_prompt(s, m), single);
        }
      }
    }
    std::cerr << "wrote " << written.size() << " transcripts to " << out << '\n';
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
