#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "detour/digest.hpp"
#include "detour/http.hpp"
#include "detour/metrics.hpp"

namespace detour {

struct DirectionsConfig {
  std::string endpoint = "https://maps.googleapis.com/maps/api/directions/json";
  std::string api_key_env = "DIRECTIONS_API_KEY";
  std::filesystem::path cache_dir;
  bool offline = false;  // cache only; a miss is a ReplayMiss
};

// Travel times from a Directions-style web service. Answers are cached on
// disk per (mode, from, to, departure) so reruns need no network.
class DirectionsProvider final : public TravelTimeProvider {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

  DirectionsProvider(const TransitNetwork& net, DirectionsConfig config, Transport* transport, EnvLookup env = {})
      : net_(net), config_(std::move(config)), transport_(transport), env_(std::move(env)) {
    if (!env_) {
      env_ = [](const std::string& name) {
        const char* v = std::getenv(name.c_str());
        return v ? std::optional<std::string>(v) : std::nullopt;
      };
    }
  }

  std::optional<double> estimate(std::string_view mode_term, const std::optional<std::string>& /*line_label*/,
                                 std::string_view from_id, std::string_view to_id,
                                 const DepartTime& depart) const override {
    const json key_doc = json::array({std::string(mode_term), std::string(from_id), std::string(to_id), depart.epoch_s});
    const std::string key = sha256_hex(key_doc.dump());
    if (auto hit = read_cache(key)) return hit->is_null() ? std::nullopt : std::optional<double>(hit->get<double>());
    if (config_.offline) throw ReplayMiss("no cached travel time for " + key_doc.dump());

    const auto token = env_(config_.api_key_env);
    if (!token || token->empty()) throw AuthError("environment variable " + config_.api_key_env + " is not set");
    if (!transport_) throw TransportError("no transport configured");

    const LatLon a = net_.station(from_id).location;
    const LatLon b = net_.station(to_id).location;
    std::ostringstream url;
    url.precision(7);
    url << std::fixed << config_.endpoint << "?origin=" << a.lat << ',' << a.lon << "&destination=" << b.lat << ','
        << b.lon << "&departure_time=" << depart.epoch_s;
    if (mode_term == "walk") url << "&mode=walking";
    else if (mode_term == "bike") url << "&mode=bicycling";
    else url << "&mode=transit&transit_mode=" << (mode_term == "bus" ? "bus" : "subway");
    url << "&key=" << *token;

    HttpRequest req;
    req.method = "GET";
    req.url = url.str();
    const HttpResponse res = transport_->send(req);
    if (res.status != 200) throw TransportError("directions service answered HTTP " + std::to_string(res.status));
    const json body = json::parse(res.body, nullptr, false);
    if (body.is_discarded()) throw TransportError("directions response is not JSON");

    std::optional<double> seconds;
    const std::string status = body.value("status", "");
    if (status == "OK") {
      try {
        double total = 0.0;
        for (const auto& leg : body.at("routes").at(0).at("legs")) total += leg.at("duration").at("value").get<double>();
        seconds = total;
      } catch (const json::exception& e) {
        throw TransportError(std::string("unexpected directions response: ") + e.what());
      }
    } else if (status != "ZERO_RESULTS" && status != "NOT_FOUND") {
      throw TransportError("directions service status '" + status + "'");
    }
    write_cache(key, key_doc, seconds);
    return seconds;
  }

 private:
  std::optional<json> read_cache(const std::string& key) const {
    if (config_.cache_dir.empty()) return std::nullopt;
    const auto path = config_.cache_dir / (key + ".json");
    std::lock_guard lock(mu_);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
    const json j = detail::parse_document(detail::read_file(path.string()), path.string());
    return detail::require_key(j, "seconds", path.string());
  }

  void write_cache(const std::string& key, const json& query, std::optional<double> seconds) const {
    if (config_.cache_dir.empty()) return;
    std::lock_guard lock(mu_);
    std::filesystem::create_directories(config_.cache_dir);
    std::ofstream out(config_.cache_dir / (key + ".json"), std::ios::binary | std::ios::trunc);
    out << json{{"query", query}, {"seconds", seconds ? json(*seconds) : json(nullptr)}}.dump(2) << '\n';
  }

  const TransitNetwork& net_;
  DirectionsConfig config_;
  Transport* transport_;
  EnvLookup env_;
  mutable std::mutex mu_;
};

}  // namespace detour
