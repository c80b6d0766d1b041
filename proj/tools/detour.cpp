#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detour.hpp"

#ifndef DETOUR_DEFAULT_DATA_DIR
#define DETOUR_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace detour;

namespace {

enum Exit { kOk = 0, kInput = 1, kNoRoute = 2, kProvider = 3 };

bool is_provider_error(const std::string& kind) {
  return kind == "TransportError" || kind == "AuthError" || kind == "RateLimited" || kind == "ReplayMiss";
}

std::string data_path(const std::string& rel) {
  if (const char* env = std::getenv("DETOUR_DATA_DIR"); env && *env) return (fs::path(env) / rel).string();
  return (fs::path(DETOUR_DEFAULT_DATA_DIR) / rel).string();
}

void write_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << text;
}

struct Globals {
  std::string depart_local = "2024-05-01T13:30";
  std::string depart_zone = "America/New_York";
  std::string travel_time = "network";
  std::string directions_cache;
  bool directions_offline = false;

  DepartTime depart() const { return make_depart_time(depart_local, depart_zone); }
};

// Owns whatever a travel-time provider needs to outlive a call.
struct TravelTimeSetup {
  std::unique_ptr<Transport> transport;
  TravelTimeFactory factory;
};

TravelTimeSetup make_travel_time(const Globals& g) {
  TravelTimeSetup s;
  if (g.travel_time == "network") return s;
  DirectionsConfig cfg;
  cfg.cache_dir = g.directions_cache;
  cfg.offline = g.directions_offline;
  if (!cfg.offline) s.transport = std::make_unique<HttplibTransport>();
  Transport* t = s.transport.get();
  s.factory = [cfg, t](const TransitNetwork& net) -> std::unique_ptr<TravelTimeProvider> {
    return std::make_unique<DirectionsProvider>(net, cfg, t);
  };
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const TransitNetwork net = load_network_file(path);
  std::cerr << path << ": ok, " << net.stations().size() << " stations, " << net.lines().size() << " lines, "
            << net.bike_stations().size() << " bike stations\n";
  return kOk;
}

int cmd_import(const std::string& feed, const std::string& out) {
  const TransitNetwork net = import_gtfs(feed);
  write_file(out, network_to_json(net).dump(2) + "\n");
  std::cerr << "wrote " << out << ": " << net.stations().size() << " stations, " << net.lines().size() << " lines\n";
  return kOk;
}

struct PlanArgs {
  std::string origin, destination;
  std::string network = "nyc";
  std::string scenario;
  std::string disruption;
  std::vector<std::string> avoid_stations;
  std::vector<std::string> disable_lines;
  std::string objective;
};

// A bundled network name (nyc, dc, net-toy) or a path.
std::string network_file(const std::string& name) {
  const std::string bundled = data_path("networks/" + name + ".json");
  if (name.find('/') == std::string::npos && name.find('.') == std::string::npos &&
      std::filesystem::exists(bundled)) {
    return bundled;
  }
  return name;
}

int cmd_plan(const PlanArgs& a) {
  std::string network_path = network_file(a.network);
  std::string origin = a.origin, destination = a.destination;
  DisruptionSpec spec;
  Objective objective = Objective::min_time;
  if (!a.scenario.empty()) {
    NetworkCache cache;
    const Scenario s = load_scenario_file(a.scenario, cache);
    network_path = s.network_path;
    if (origin.empty()) origin = s.origin;
    if (destination.empty()) destination = s.destination;
    spec = s.disruption;
    objective = s.objective;
  }
  if (origin.empty() || destination.empty()) throw SchemaError("plan needs an origin and a destination");
  if (!a.disruption.empty()) {
    spec = disruption_from_json(detail::parse_document(detail::read_file(a.disruption), a.disruption), a.disruption);
  }
  spec.avoided_stations.insert(a.avoid_stations.begin(), a.avoid_stations.end());
  spec.disabled_lines.insert(a.disable_lines.begin(), a.disable_lines.end());
  if (!a.objective.empty()) {
    auto o = parse_objective(a.objective);
    if (!o) throw SchemaError("unknown objective '" + a.objective + "'");
    objective = *o;
  }

  const TransitNetwork net = load_network_file(network_path);
  const EffectiveConstraints k = compile(net, spec);
  const std::string from = resolve_station(net, origin);
  const std::string to = resolve_station(net, destination);
  const PlanResult r = plan(net, k, from, to, objective);
  std::cout << serialize_route(r.route) << '\n';
  std::fprintf(stderr, "%s: %.1f s, %d transfers, %d stations visited, %zu legs\n",
               std::string(to_string(objective)).c_str(), r.total_cost_s, r.transfers, r.stations_visited,
               r.route.legs.size());
  return kOk;
}

int cmd_evaluate(const std::string& route_file, const std::string& scenario_file, const Globals& g) {
  NetworkCache cache;
  const Scenario s = load_scenario_file(scenario_file, cache);
  const ResolvedScenario r = resolve_scenario(s, cache);
  std::string text;
  try {
    text = detail::read_file(route_file);
  } catch (const std::runtime_error&) {
    throw SchemaError("cannot read route file '" + route_file + "'");
  }
  // A trailing newline is file framing, not model output.
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  const ParseResult parsed = parse_route(text);
  TravelTimeSetup tt = make_travel_time(g);
  std::unique_ptr<TravelTimeProvider> provider =
      tt.factory ? tt.factory(*r.network) : std::make_unique<NetworkTravelTimeProvider>(*r.network);
  const MetricsReport m = evaluate(*r.network, r.constraints, r.origin_id, r.destination_id, parsed, *provider, g.depart());
  std::cout << metrics_to_json(m).dump(2) << '\n';
  return kOk;
}

struct LlmArgs {
  std::string scenarios = data_path("scenarios");
  std::string providers = "all";
  std::string provider_config = data_path("providers.json");
  std::string summarizer;
  std::string pipeline = "two-stage";
  std::string maps = "with";
  std::string io = "replay";
  std::string cassettes = data_path("cassettes");
  std::string out;
  std::size_t concurrency = 4;
};

template <class T, class Parse>
std::vector<T> modes(const std::string& value, Parse parse, std::initializer_list<T> both, const char* what) {
  if (value == "both") return both;
  auto m = parse(value);
  if (!m) throw SchemaError(std::string("unknown ") + what + " '" + value + "'");
  return {*m};
}

int cmd_llm_run(const LlmArgs& a, const Globals& g) {
  const auto io = parse_io_mode(a.io);
  if (!io) throw SchemaError("unknown io mode '" + a.io + "'");
  const auto pipelines =
      modes(a.pipeline, parse_pipeline_mode, {PipelineMode::two_stage, PipelineMode::single_stage}, "pipeline");
  const auto map_modes = modes(a.maps, parse_map_mode, {MapMode::with_maps, MapMode::without_maps}, "maps mode");

  const std::vector<ProviderConfig> all = load_providers(a.provider_config);
  std::vector<ProviderConfig> chosen;
  if (a.providers == "all") {
    chosen = all;
  } else {
    for (const auto& name : split_list(a.providers)) {
      auto it = std::find_if(all.begin(), all.end(), [&](const ProviderConfig& p) { return p.name == name; });
      if (it == all.end()) throw NotFound("provider '" + name + "' is not in " + a.provider_config);
      chosen.push_back(*it);
    }
  }
  std::optional<ProviderConfig> summarizer;
  if (!a.summarizer.empty()) {
    auto it = std::find_if(all.begin(), all.end(), [&](const ProviderConfig& p) { return p.name == a.summarizer; });
    if (it == all.end()) throw NotFound("provider '" + a.summarizer + "' is not in " + a.provider_config);
    summarizer = *it;
  }

  NetworkCache cache;
  const std::vector<Scenario> scenarios = load_scenarios(a.scenarios, cache);
  TranscriptStore store(a.cassettes);
  std::unique_ptr<Transport> transport;
  if (*io != IoMode::replay) transport = std::make_unique<HttplibTransport>();
  TravelTimeSetup tt = make_travel_time(g);

  std::vector<CellResult> cells;
  for (PipelineMode p : pipelines) {
    for (MapMode m : map_modes) {
      EvaluationOptions opt;
      opt.pipeline = p;
      opt.maps = m;
      opt.io = *io;
      opt.store = &store;
      opt.invoke.transport = transport.get();
      opt.summarizer = summarizer ? &*summarizer : nullptr;
      opt.concurrency = a.concurrency;
      opt.depart = g.depart();
      opt.travel_time = tt.factory;
      auto part = run_evaluation(scenarios, chosen, opt);
      cells.insert(cells.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }

  bool provider_failure = false;
  std::size_t failed = 0;
  for (const auto& c : cells) {
    if (c.ok()) {
      const auto& r = *c.metrics;
      std::fprintf(stderr, "%-4s %-8s %-12s %-7s connected=%d avoided=%d time=%.2f transfers=%d violation=%d\n",
                   c.scenario_id.c_str(), c.provider.c_str(), std::string(to_string(c.pipeline)).c_str(),
                   std::string(to_string(c.maps)).c_str(), r.connected, r.avoided, r.normalized_time, r.transfers,
                   r.format_violation);
    } else {
      ++failed;
      provider_failure = provider_failure || is_provider_error(c.error_kind);
      std::fprintf(stderr, "%-4s %-8s %-12s %-7s %s: %s\n", c.scenario_id.c_str(), c.provider.c_str(),
                   std::string(to_string(c.pipeline)).c_str(), std::string(to_string(c.maps)).c_str(),
                   c.error_kind.c_str(), c.error_message.c_str());
    }
  }
  const std::string doc = results_to_json(cells).dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << doc;
  } else {
    write_file(a.out, doc);
  }
  std::cerr << cells.size() << " cells, " << failed << " failed\n";
  if (failed == 0) return kOk;
  return provider_failure ? kProvider : kInput;
}

struct ReportArgs {
  std::vector<std::string> results;
  std::string layout = "models";
  std::string csv;
  std::string provider;
  std::string order;
};

int cmd_report(const ReportArgs& a) {
  const auto layout = parse_layout(a.layout);
  if (!layout) throw SchemaError("unknown layout '" + a.layout + "'");
  std::vector<CellResult> cells;
  for (const auto& path : a.results) {
    auto part = results_from_json(detail::parse_document(detail::read_file(path), path));
    cells.insert(cells.end(), part.begin(), part.end());
  }
  const AggregateReport agg = aggregate(cells);
  RenderOptions ro;
  ro.provider = a.provider;
  ro.provider_order = split_list(a.order);
  if (ro.provider_order.empty()) {
    for (const auto& c : cells) {
      if (std::find(ro.provider_order.begin(), ro.provider_order.end(), c.provider) == ro.provider_order.end()) {
        ro.provider_order.push_back(c.provider);
      }
    }
  }
  const RenderedTable t = render_table(agg, *layout, ro);
  std::cout << t.text;
  std::string csv = a.csv;
  if (csv.empty()) {
    const fs::path first(a.results.front());
    csv = (first.parent_path() / (first.stem().string() + "-" + a.layout + ".csv")).string();
  }
  write_file(csv, t.csv);
  std::cerr << "wrote " << csv << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disruption-aware transit routing and LLM route-planning evaluation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--depart", g.depart_local, "Departure, local time YYYY-MM-DDTHH:MM")->capture_default_str();
  app.add_option("--timezone", g.depart_zone, "IANA zone of --depart")->capture_default_str();
  app.add_option("--travel-time", g.travel_time, "Travel-time provider")
      ->check(CLI::IsMember({"network", "directions"}))
      ->capture_default_str();
  app.add_option("--directions-cache", g.directions_cache, "Cache directory for the directions provider");
  app.add_flag("--directions-offline", g.directions_offline, "Answer travel times from the cache only");

  auto* network = app.add_subcommand("network", "Validate or import network documents");
  network->require_subcommand(1);
  std::string validate_path;
  auto* validate = network->add_subcommand("validate", "Load a network document and report problems");
  validate->add_option("file", validate_path)->required();
  std::string feed, import_out;
  auto* import = network->add_subcommand("import-gtfs", "Convert a GTFS feed directory to a network document");
  import->add_option("feed", feed)->required();
  import->add_option("--out", import_out)->required();

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a constrained route with the oracle router");
  plan_cmd->add_option("origin", plan_args.origin);
  plan_cmd->add_option("destination", plan_args.destination);
  plan_cmd->add_option("--network", plan_args.network, "Bundled network name or network file")->capture_default_str();
  plan_cmd->add_option("--scenario", plan_args.scenario, "Take network, endpoints and constraints from a scenario");
  plan_cmd->add_option("--disruption", plan_args.disruption, "Disruption spec JSON file");
  plan_cmd->add_option("--avoid-station", plan_args.avoid_stations, "Station name to avoid (repeatable)")->allow_extra_args(false);
  plan_cmd->add_option("--disable-line", plan_args.disable_lines, "Line label to disable (repeatable)")->allow_extra_args(false);
  plan_cmd->add_option("--objective", plan_args.objective)->check(CLI::IsMember({"min-time", "min-stops"}));

  std::string route_file, scenario_file;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a route file against a scenario");
  eval_cmd->add_option("route", route_file)->required();
  eval_cmd->add_option("scenario", scenario_file)->required();

  LlmArgs llm;
  auto* llm_cmd = app.add_subcommand("llm", "Run the planner/summary pipeline");
  llm_cmd->require_subcommand(1);
  auto* run = llm_cmd->add_subcommand("run", "Evaluate scenarios across providers");
  run->add_option("--scenarios", llm.scenarios, "Scenario file or directory")->capture_default_str();
  run->add_option("--providers", llm.providers, "'all' or comma-separated provider names")->capture_default_str();
  run->add_option("--provider-config", llm.provider_config)->capture_default_str();
  run->add_option("--summarizer", llm.summarizer, "Provider for the summary stage (default: the planner)");
  run->add_option("--pipeline", llm.pipeline)
      ->check(CLI::IsMember({"two-stage", "single-stage", "both"}))
      ->capture_default_str();
  run->add_option("--maps", llm.maps)->check(CLI::IsMember({"with", "without", "both"}))->capture_default_str();
  run->add_option("--io", llm.io)->check(CLI::IsMember({"live", "record", "replay"}))->capture_default_str();
  run->add_option("--cassettes", llm.cassettes)->capture_default_str();
  run->add_option("--out", llm.out, "Results file (default: standard output)");
  run->add_option("--concurrency", llm.concurrency)->check(CLI::PositiveNumber)->capture_default_str();

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Render aggregate tables from results files");
  report->add_option("results", rep.results)->required();
  report->add_option("--layout", rep.layout)
      ->check(CLI::IsMember({"models", "map-ablation", "summary-ablation"}))
      ->capture_default_str();
  report->add_option("--csv", rep.csv, "CSV output path");
  report->add_option("--provider", rep.provider, "Provider of an ablation table");
  report->add_option("--order", rep.order, "Comma-separated provider column order (default: order of first appearance)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_path);
    if (import->parsed()) return cmd_import(feed, import_out);
    if (plan_cmd->parsed()) return cmd_plan(plan_args);
    if (eval_cmd->parsed()) return cmd_evaluate(route_file, scenario_file, g);
    if (run->parsed()) return cmd_llm_run(llm, g);
    if (report->parsed()) return cmd_report(rep);
  } catch (const NoRoute& e) {
    std::cerr << "NoRoute: " << e.what() << '\n';
    return kNoRoute;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return is_provider_error(e.kind()) ? kProvider : kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
