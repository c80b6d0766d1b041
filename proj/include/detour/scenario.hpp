#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "detour/disruption.hpp"
#include "detour/json_util.hpp"
#include "detour/network.hpp"
#include "detour/router.hpp"

namespace detour {

struct ImageRef {
  std::string path;  // resolved against the scenario file's directory
  std::string caption;
  std::string media_type;

  friend bool operator==(const ImageRef&, const ImageRef&) = default;
};

struct Scenario {
  std::string id;
  std::string title;
  std::string take_home;
  std::string notes;  // how the prose was encoded into the disruption spec
  std::string network_path;
  std::string origin;
  std::string destination;
  DisruptionSpec disruption;
  Objective objective = Objective::min_time;
  std::string query;
  std::vector<std::string> instructions;
  std::vector<ImageRef> maps;         // knowledge-base images, dropped without maps
  std::vector<ImageRef> attachments;  // part of the user query, always sent
  bool degenerate = false;
  std::string source_path;
};

// Loaded networks shared across scenarios and threads.
class NetworkCache {
 public:
  std::shared_ptr<const TransitNetwork> get(const std::string& path) {
    const std::string key = std::filesystem::weakly_canonical(path).string();
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(key, ec)) throw MissingNetwork("network file not found: " + path);
    auto net = std::make_shared<const TransitNetwork>(load_network_file(key));
    cache_.emplace(key, net);
    return net;
  }

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const TransitNetwork>> cache_;
};

namespace scenario_detail {

inline std::string media_type_for(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  throw SchemaError("attachment '" + path + "' is not a PNG or JPEG file");
}

inline std::vector<ImageRef> images(const json& j, const char* key, const std::filesystem::path& base,
                                    const std::string& where) {
  std::vector<ImageRef> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) throw SchemaError(where + ": '" + key + "' must be an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string w = where + "." + key + "[" + std::to_string(i) + "]";
    const json& ji = (*it)[i];
    detail::require_only_keys(ji, {"path", "caption"}, w);
    ImageRef ref;
    const std::string rel = detail::require_string(ji, "path", w);
    ref.path = (base / rel).lexically_normal().string();
    ref.caption = ji.contains("caption") ? detail::require_string(ji, "caption", w) : std::string();
    ref.media_type = media_type_for(rel);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(ref.path, ec)) throw MissingAttachment(w + ": file not found: " + ref.path);
    out.push_back(std::move(ref));
  }
  return out;
}

inline std::string optional_string(const json& j, const char* key, const std::string& where) {
  return j.contains(key) ? detail::require_string(j, key, where) : std::string();
}

}  // namespace scenario_detail

inline Scenario scenario_from_json(const json& j, const std::filesystem::path& base, const std::string& where) {
  using detail::require_string;
  detail::require_only_keys(j,
                            {"id", "title", "take_home", "notes", "network", "origin", "destination", "disruption",
                             "objective", "query", "instructions", "maps", "attachments", "degenerate"},
                            where);
  Scenario s;
  s.id = require_string(j, "id", where);
  s.title = scenario_detail::optional_string(j, "title", where);
  s.take_home = scenario_detail::optional_string(j, "take_home", where);
  s.notes = scenario_detail::optional_string(j, "notes", where);
  s.network_path = (base / require_string(j, "network", where)).lexically_normal().string();
  s.origin = require_string(j, "origin", where);
  s.destination = require_string(j, "destination", where);
  s.query = require_string(j, "query", where);
  if (is_blank(s.id) || is_blank(s.origin) || is_blank(s.destination) || is_blank(s.query)) {
    throw SchemaError(where + ": id, origin, destination and query must be non-empty");
  }
  if (j.contains("disruption")) s.disruption = disruption_from_json(j.at("disruption"), where + ".disruption");
  if (j.contains("objective")) {
    const std::string o = require_string(j, "objective", where);
    auto parsed = parse_objective(o);
    if (!parsed) throw SchemaError(where + ": unknown objective '" + o + "'");
    s.objective = *parsed;
  }
  if (auto it = j.find("instructions"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(where + ": 'instructions' must be an array");
    for (const auto& v : *it) {
      if (!v.is_string()) throw SchemaError(where + ": instructions must be strings");
      s.instructions.push_back(v.get<std::string>());
    }
  }
  if (j.contains("degenerate")) {
    if (!j.at("degenerate").is_boolean()) throw SchemaError(where + ": 'degenerate' must be a boolean");
    s.degenerate = j.at("degenerate").get<bool>();
  }
  s.maps = scenario_detail::images(j, "maps", base, where);
  s.attachments = scenario_detail::images(j, "attachments", base, where);
  return s;
}

// Names, constraints and network of a scenario, resolved against its network.
struct ResolvedScenario {
  std::shared_ptr<const TransitNetwork> network;
  std::string origin_id;
  std::string destination_id;
  EffectiveConstraints constraints;
};

inline ResolvedScenario resolve_scenario(const Scenario& s, NetworkCache& cache) {
  ResolvedScenario r;
  r.network = cache.get(s.network_path);
  r.origin_id = resolve_station(*r.network, s.origin);
  r.destination_id = resolve_station(*r.network, s.destination);
  r.constraints = compile(*r.network, s.disruption);
  return r;
}

inline Scenario load_scenario_file(const std::string& path, NetworkCache& cache) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const std::runtime_error&) {
    throw SchemaError("cannot read scenario file '" + path + "'");
  }
  const json doc = detail::parse_document(text, path);
  Scenario s = scenario_from_json(doc, std::filesystem::path(path).parent_path(), path);
  s.source_path = path;
  ResolvedScenario r;
  try {
    r = resolve_scenario(s, cache);
  } catch (const MissingNetwork&) {
    throw;
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.kind() + ": " + e.what());
  }
  if (r.origin_id == r.destination_id && !s.degenerate) {
    throw SchemaError(path + ": origin and destination are the same station; set \"degenerate\": true if intended");
  }
  return s;
}

// A scenario file, or every *.json file of a directory (sorted by file name).
inline std::vector<Scenario> load_scenarios(const std::string& path, NetworkCache& cache) {
  std::vector<Scenario> out;
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(load_scenario_file(f.string(), cache));
  } else {
    out.push_back(load_scenario_file(path, cache));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (out[k].id == out[i].id) throw DuplicateId("scenario id '" + out[i].id + "' appears twice");
    }
  }
  return out;
}

inline std::vector<Scenario> load_scenarios(const std::string& path) {
  NetworkCache cache;
  return load_scenarios(path, cache);
}

}  // namespace detour
