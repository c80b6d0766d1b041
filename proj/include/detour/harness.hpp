#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "detour/metrics.hpp"
#include "detour/pipeline.hpp"
#include "detour/scenario.hpp"

namespace detour {

struct CellResult {
  std::string scenario_id;
  std::string provider;
  std::string provider_label;
  PipelineMode pipeline = PipelineMode::two_stage;
  MapMode maps = MapMode::with_maps;
  std::optional<MetricsReport> metrics;
  std::string error_kind;  // empty when metrics are present
  std::string error_message;
  std::string plan_text;
  std::string summary_text;

  bool ok() const { return metrics.has_value(); }
  friend bool operator==(const CellResult&, const CellResult&) = default;
};

using TravelTimeFactory = std::function<std::unique_ptr<TravelTimeProvider>(const TransitNetwork&)>;

struct EvaluationOptions {
  PipelineMode pipeline = PipelineMode::two_stage;
  MapMode maps = MapMode::with_maps;
  IoMode io = IoMode::replay;
  TranscriptStore* store = nullptr;
  InvokeContext invoke;
  const ProviderConfig* summarizer = nullptr;  // nullptr: each planner summarizes itself
  std::size_t concurrency = 4;
  DepartTime depart = default_depart_time();
  TravelTimeFactory travel_time;  // default: NetworkTravelTimeProvider
};

namespace harness_detail {

inline CellResult run_cell(const Scenario& s, const ProviderConfig& p, const EvaluationOptions& opt,
                           NetworkCache& cache) {
  CellResult c;
  c.scenario_id = s.id;
  c.provider = p.name;
  c.provider_label = p.label;
  c.pipeline = opt.pipeline;
  c.maps = opt.maps;
  try {
    const ResolvedScenario r = resolve_scenario(s, cache);
    PipelineResult out = run_pipeline(s, p, opt.pipeline, opt.maps, opt.store, opt.io, opt.invoke, opt.summarizer);
    c.plan_text = std::move(out.plan_text);
    c.summary_text = std::move(out.summary_text);
    std::unique_ptr<TravelTimeProvider> travel =
        opt.travel_time ? opt.travel_time(*r.network) : std::make_unique<NetworkTravelTimeProvider>(*r.network);
    c.metrics = evaluate(*r.network, r.constraints, r.origin_id, r.destination_id, out.parsed, *travel, opt.depart);
  } catch (const Error& e) {
    c.error_kind = e.kind();
    c.error_message = e.what();
  } catch (const std::exception& e) {
    c.error_kind = "InternalError";
    c.error_message = e.what();
  }
  return c;
}

}  // namespace harness_detail

// Every scenario against every provider, in scenario-major order. Cells run on
// up to `concurrency` threads; a failing cell records its error and the run
// goes on.
inline std::vector<CellResult> run_evaluation(const std::vector<Scenario>& scenarios,
                                              const std::vector<ProviderConfig>& providers,
                                              const EvaluationOptions& opt) {
  const std::size_t n = scenarios.size() * providers.size();
  std::vector<CellResult> out(n);
  if (n == 0) return out;
  NetworkCache cache;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      out[i] = harness_detail::run_cell(scenarios[i / providers.size()], providers[i % providers.size()], opt, cache);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(opt.concurrency, 1, n);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation

struct GroupKey {
  std::string provider;
  PipelineMode pipeline = PipelineMode::two_stage;
  MapMode maps = MapMode::with_maps;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct GroupStats {
  std::string label;
  std::size_t cells = 0;         // scored cells
  std::size_t failed_cells = 0;  // cells that produced no report
  std::size_t valid_routes = 0;
  double connectivity = 0.0;
  double avoidance = 0.0;
  double normalized_time = 0.0;
  std::optional<double> transfers;  // mean over valid routes
  double violation_rate = 0.0;

  friend bool operator==(const GroupStats&, const GroupStats&) = default;
};

struct AggregateReport {
  std::map<GroupKey, GroupStats> groups;
};

namespace harness_detail {

// Order-independent mean: the same values give the same bits in any order.
inline double stable_mean(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace harness_detail

inline AggregateReport aggregate(const std::vector<CellResult>& cells) {
  struct Acc {
    std::string label;
    std::size_t failed = 0;
    std::vector<MetricsReport> reports;
  };
  std::map<GroupKey, Acc> acc;
  for (const auto& c : cells) {
    Acc& a = acc[GroupKey{c.provider, c.pipeline, c.maps}];
    if (a.label.empty() || c.provider_label < a.label) a.label = c.provider_label;
    if (c.metrics) a.reports.push_back(*c.metrics);
    else ++a.failed;
  }
  if (acc.empty()) throw EmptyGroup("no results to aggregate");

  AggregateReport out;
  for (const auto& [key, a] : acc) {
    if (a.reports.empty()) {
      throw EmptyGroup("no scored cells for provider '" + key.provider + "' (" + std::string(to_string(key.pipeline)) +
                       ", " + std::string(to_string(key.maps)) + " maps)");
    }
    GroupStats g;
    g.label = a.label;
    g.cells = a.reports.size();
    g.failed_cells = a.failed;
    std::size_t connected = 0, avoided = 0, violations = 0;
    std::vector<double> times;
    long long transfer_sum = 0;
    for (const auto& r : a.reports) {
      connected += r.connected;
      avoided += r.avoided;
      violations += r.format_violation;
      times.push_back(r.normalized_time);
      if (r.valid) {
        ++g.valid_routes;
        transfer_sum += r.transfers;
      }
    }
    const double n = static_cast<double>(g.cells);
    g.connectivity = static_cast<double>(connected) / n;
    g.avoidance = static_cast<double>(avoided) / n;
    g.violation_rate = static_cast<double>(violations) / n;
    g.normalized_time = harness_detail::stable_mean(std::move(times));
    if (g.valid_routes > 0) g.transfers = static_cast<double>(transfer_sum) / static_cast<double>(g.valid_routes);
    out.groups.emplace(key, g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

enum class Layout { models, map_ablation, summary_ablation };

inline std::optional<Layout> parse_layout(std::string_view s) {
  if (s == "models") return Layout::models;
  if (s == "map-ablation") return Layout::map_ablation;
  if (s == "summary-ablation") return Layout::summary_ablation;
  return std::nullopt;
}

struct RenderOptions {
  std::vector<std::string> provider_order;  // column order for the models layout
  std::string provider;                     // subject of the ablation layouts; empty picks the first eligible
};

struct RenderedTable {
  std::string text;
  std::string csv;
};

inline std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline constexpr std::string_view kUndefined = "\xE2\x80\x94";  // em dash

namespace harness_detail {

inline std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (unsigned char c : s) w += (c & 0xC0) != 0x80;
  return w;
}

inline std::string pad(std::string_view s, std::size_t width) {
  return std::string(s) + std::string(width - std::min(width, display_width(s)), ' ');
}

struct Column {
  std::string heading;
  const GroupStats* stats;
};

inline const GroupStats* find(const AggregateReport& agg, const std::string& provider, PipelineMode p, MapMode m) {
  auto it = agg.groups.find(GroupKey{provider, p, m});
  return it == agg.groups.end() ? nullptr : &it->second;
}

inline std::vector<std::string> providers_in(const AggregateReport& agg) {
  std::vector<std::string> names;
  for (const auto& [key, _] : agg.groups) {
    if (std::find(names.begin(), names.end(), key.provider) == names.end()) names.push_back(key.provider);
  }
  return names;
}

inline std::string ablation_subject(const AggregateReport& agg, const RenderOptions& opt, PipelineMode p2, MapMode m2,
                                    const char* layout) {
  auto eligible = [&](const std::string& name) {
    return find(agg, name, PipelineMode::two_stage, MapMode::with_maps) && find(agg, name, p2, m2);
  };
  if (!opt.provider.empty()) {
    if (!eligible(opt.provider)) {
      throw MissingColumn(std::string(layout) + " layout: provider '" + opt.provider + "' lacks one of the two modes");
    }
    return opt.provider;
  }
  std::vector<std::string> order = opt.provider_order;
  for (const auto& name : providers_in(agg)) {
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  }
  for (const auto& name : order) {
    if (eligible(name)) return name;
  }
  throw MissingColumn(std::string(layout) + " layout: no provider has results in both modes");
}

}  // namespace harness_detail

inline RenderedTable render_table(const AggregateReport& agg, Layout layout, const RenderOptions& opt = {}) {
  using harness_detail::Column;
  std::vector<Column> cols;
  std::string title;
  bool with_violations = false;

  switch (layout) {
    case Layout::models: {
      std::vector<std::string> order;
      for (const auto& name : opt.provider_order) {
        if (harness_detail::find(agg, name, PipelineMode::two_stage, MapMode::with_maps)) order.push_back(name);
      }
      for (const auto& name : harness_detail::providers_in(agg)) {
        if (std::find(order.begin(), order.end(), name) == order.end() &&
            harness_detail::find(agg, name, PipelineMode::two_stage, MapMode::with_maps)) {
          order.push_back(name);
        }
      }
      if (order.size() < 2) {
        throw MissingColumn("models layout needs two-stage, with-maps results from at least two providers");
      }
      for (const auto& name : order) {
        const GroupStats* g = harness_detail::find(agg, name, PipelineMode::two_stage, MapMode::with_maps);
        cols.push_back({g->label, g});
      }
      break;
    }
    case Layout::map_ablation: {
      const std::string p = harness_detail::ablation_subject(agg, opt, PipelineMode::two_stage, MapMode::without_maps,
                                                             "map-ablation");
      const GroupStats* with = harness_detail::find(agg, p, PipelineMode::two_stage, MapMode::with_maps);
      const GroupStats* without = harness_detail::find(agg, p, PipelineMode::two_stage, MapMode::without_maps);
      cols.push_back({with->label + " w/ Map", with});
      cols.push_back({without->label + " w/o Map", without});
      break;
    }
    case Layout::summary_ablation: {
      const std::string p = harness_detail::ablation_subject(agg, opt, PipelineMode::single_stage, MapMode::with_maps,
                                                             "summary-ablation");
      cols.push_back({"Yes", harness_detail::find(agg, p, PipelineMode::two_stage, MapMode::with_maps)});
      cols.push_back({"No", harness_detail::find(agg, p, PipelineMode::single_stage, MapMode::with_maps)});
      title = "Separate LLM Summary?";
      with_violations = true;
      break;
    }
  }

  struct Row {
    std::string name;
    std::string arrow;
    std::function<std::optional<double>(const GroupStats&)> get;
  };
  std::vector<Row> rows = {
      {"Connectivity", "\xE2\x86\x91", [](const GroupStats& g) { return std::optional(g.connectivity); }},
      {"Avoidance", "\xE2\x86\x91", [](const GroupStats& g) { return std::optional(g.avoidance); }},
      {"Approx. Time", "\xE2\x86\x93", [](const GroupStats& g) { return std::optional(g.normalized_time); }},
      {"# Transfers", "\xE2\x86\x93", [](const GroupStats& g) { return g.transfers; }},
  };
  if (with_violations) {
    rows.push_back({"Violations of format", "\xE2\x86\x93",
                    [](const GroupStats& g) { return std::optional(g.violation_rate); }});
  }

  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Metric"});
  for (const auto& c : cols) grid.back().push_back(c.heading);
  std::ostringstream csv;
  csv << "metric";
  for (const auto& c : cols) csv << ',' << c.heading;
  csv << '\n';
  for (const auto& r : rows) {
    grid.push_back({r.name + " " + r.arrow});
    csv << r.name;
    for (const auto& c : cols) {
      const auto v = r.get(*c.stats);
      grid.back().push_back(v ? format_value(*v) : std::string(kUndefined));
      csv << ',' << (v ? format_value(*v) : std::string());
    }
    csv << '\n';
  }

  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], harness_detail::display_width(line[i]));
  }
  std::ostringstream text;
  if (!title.empty()) {
    std::size_t left = width[0] + 3;
    text << std::string(left, ' ') << title << '\n';
  }
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      if (i > 0) text << " | ";
      text << (i + 1 == grid[r].size() ? grid[r][i] : harness_detail::pad(grid[r][i], width[i]));
    }
    text << '\n';
    if (r == 0) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        if (i > 0) text << "-+-";
        text << std::string(width[i], '-');
      }
      text << '\n';
    }
  }
  return RenderedTable{text.str(), csv.str()};
}

// ---------------------------------------------------------------------------
// Results files

inline json cell_to_json(const CellResult& c) {
  json j = {{"scenario", c.scenario_id},
            {"provider", c.provider},
            {"label", c.provider_label},
            {"pipeline", std::string(to_string(c.pipeline))},
            {"maps", std::string(to_string(c.maps))},
            {"plan_text", c.plan_text},
            {"summary_text", c.summary_text}};
  j["metrics"] = c.metrics ? metrics_to_json(*c.metrics) : json(nullptr);
  j["error"] = c.ok() ? json(nullptr) : json{{"kind", c.error_kind}, {"message", c.error_message}};
  return j;
}

inline CellResult cell_from_json(const json& j) {
  const std::string where = "result cell";
  detail::require_only_keys(
      j, {"scenario", "provider", "label", "pipeline", "maps", "plan_text", "summary_text", "metrics", "error"}, where);
  CellResult c;
  c.scenario_id = detail::require_string(j, "scenario", where);
  c.provider = detail::require_string(j, "provider", where);
  c.provider_label = detail::require_string(j, "label", where);
  auto p = parse_pipeline_mode(detail::require_string(j, "pipeline", where));
  auto m = parse_map_mode(detail::require_string(j, "maps", where));
  if (!p || !m) throw SchemaError(where + ": bad pipeline or maps value");
  c.pipeline = *p;
  c.maps = *m;
  c.plan_text = detail::require_string(j, "plan_text", where);
  c.summary_text = detail::require_string(j, "summary_text", where);
  if (const json& mj = detail::require_key(j, "metrics", where); !mj.is_null()) c.metrics = metrics_from_json(mj);
  if (const json& ej = detail::require_key(j, "error", where); !ej.is_null()) {
    c.error_kind = detail::require_string(ej, "kind", where);
    c.error_message = detail::require_string(ej, "message", where);
  }
  return c;
}

inline json results_to_json(const std::vector<CellResult>& cells) {
  json arr = json::array();
  for (const auto& c : cells) arr.push_back(cell_to_json(c));
  return {{"prompt_template", prompt_template_hash()}, {"cells", std::move(arr)}};
}

inline std::vector<CellResult> results_from_json(const json& j) {
  detail::require_only_keys(j, {"prompt_template", "cells"}, "results");
  const json& arr = detail::require_key(j, "cells", "results");
  if (!arr.is_array()) throw SchemaError("results: 'cells' must be an array");
  std::vector<CellResult> out;
  for (const auto& c : arr) out.push_back(cell_from_json(c));
  return out;
}

}  // namespace detour
