#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "detour/digest.hpp"
#include "detour/errors.hpp"
#include "detour/http.hpp"
#include "detour/json_util.hpp"

namespace detour {

enum class IoMode { live, record, replay };

inline std::string_view to_string(IoMode m) {
  switch (m) {
    case IoMode::live: return "live";
    case IoMode::record: return "record";
    case IoMode::replay: return "replay";
  }
  return "replay";
}

inline std::optional<IoMode> parse_io_mode(std::string_view s) {
  if (s == "live") return IoMode::live;
  if (s == "record") return IoMode::record;
  if (s == "replay") return IoMode::replay;
  return std::nullopt;
}

struct Attachment {
  std::string media_type;  // image/png or image/jpeg
  std::string bytes;
  std::string caption;

  friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  std::vector<Attachment> attachments;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

inline void validate_bundle(const PromptBundle& b) {
  if (b.system_text.empty()) throw InvariantViolation("prompt bundle has an empty system text");
  for (const auto& a : b.attachments) {
    if (a.media_type != "image/png" && a.media_type != "image/jpeg") {
      throw InvariantViolation("unsupported attachment media type '" + a.media_type + "'");
    }
  }
}

// Canonical encoding of a bundle. Attachment bytes enter through their digest.
inline json bundle_snapshot(const PromptBundle& b) {
  json atts = json::array();
  for (const auto& a : b.attachments) {
    atts.push_back({{"media_type", a.media_type},
                    {"caption", a.caption},
                    {"sha256", sha256_hex(a.bytes)},
                    {"size", a.bytes.size()}});
  }
  return {{"system", b.system_text}, {"user", b.user_text}, {"attachments", std::move(atts)}};
}

struct ProviderConfig {
  std::string name;   // short key, e.g. "gpt"
  std::string label;  // column heading in reports, e.g. "GPT"
  std::string api;    // openai | anthropic | gemini
  std::string endpoint;  // "{model}" is replaced by model_id
  std::string model_id;
  std::string auth_token_env;
  int max_output_tokens = 1024;
  double temperature = 0.0;

  friend bool operator==(const ProviderConfig&, const ProviderConfig&) = default;
};

inline ProviderConfig provider_from_json(const json& j) {
  const std::string where = "provider";
  detail::require_only_keys(
      j, {"name", "label", "api", "endpoint", "model_id", "auth_token_env", "max_output_tokens", "temperature"}, where);
  ProviderConfig p;
  p.name = detail::require_string(j, "name", where);
  p.label = j.contains("label") ? detail::require_string(j, "label", where) : p.name;
  p.api = detail::require_string(j, "api", where);
  p.endpoint = detail::require_string(j, "endpoint", where);
  p.model_id = detail::require_string(j, "model_id", where);
  p.auth_token_env = detail::require_string(j, "auth_token_env", where);
  if (j.contains("max_output_tokens")) p.max_output_tokens = static_cast<int>(detail::require_number(j, "max_output_tokens", where));
  if (j.contains("temperature")) p.temperature = detail::require_number(j, "temperature", where);
  if (p.name.empty()) throw SchemaError("provider with an empty name");
  if (p.api != "openai" && p.api != "anthropic" && p.api != "gemini") {
    throw SchemaError("provider '" + p.name + "': unknown api '" + p.api + "'");
  }
  if (p.temperature < 0) throw SchemaError("provider '" + p.name + "': temperature must be >= 0");
  if (p.max_output_tokens <= 0) throw SchemaError("provider '" + p.name + "': max_output_tokens must be > 0");
  return p;
}

inline json provider_to_json(const ProviderConfig& p) {
  return {{"name", p.name},
          {"label", p.label},
          {"api", p.api},
          {"endpoint", p.endpoint},
          {"model_id", p.model_id},
          {"auth_token_env", p.auth_token_env},
          {"max_output_tokens", p.max_output_tokens},
          {"temperature", p.temperature}};
}

// {"providers": [...]}; names must be unique.
inline std::vector<ProviderConfig> load_providers(const std::string& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const std::runtime_error&) {
    throw SchemaError("cannot read provider file '" + path + "'");
  }
  const json doc = detail::parse_document(text, path);
  detail::require_only_keys(doc, {"providers"}, path);
  const json& arr = detail::require_key(doc, "providers", path);
  if (!arr.is_array()) throw SchemaError(path + ": 'providers' must be an array");
  std::vector<ProviderConfig> out;
  for (const auto& j : arr) {
    auto p = provider_from_json(j);
    for (const auto& q : out) {
      if (q.name == p.name) throw DuplicateId("duplicate provider '" + p.name + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Content key of one call. No timestamps or sampling settings go in.
inline std::string transcript_key(const ProviderConfig& p, const PromptBundle& b) {
  return sha256_hex(json::array({p.name, p.model_id, bundle_snapshot(b)}).dump());
}

inline json request_snapshot(const ProviderConfig& p, const PromptBundle& b) {
  return {{"provider", p.name},
          {"api", p.api},
          {"model_id", p.model_id},
          {"temperature", p.temperature},
          {"max_output_tokens", p.max_output_tokens},
          {"bundle", bundle_snapshot(b)}};
}

struct Transcript {
  std::string key;
  json request_snapshot;
  std::string response_text;
  std::string recorded_at;
};

// One file per transcript: <dir>/<key>.json. Writes are serialized.
class TranscriptStore {
 public:
  explicit TranscriptStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<Transcript> find(const std::string& key) const {
    const auto path = path_for(key);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
    const json j = detail::parse_document(detail::read_file(path.string()), path.string());
    const std::string where = "transcript " + path.filename().string();
    detail::require_only_keys(j, {"request_snapshot", "response_text", "recorded_at"}, where);
    return Transcript{key, detail::require_key(j, "request_snapshot", where),
                      detail::require_string(j, "response_text", where), detail::require_string(j, "recorded_at", where)};
  }

  void put(const Transcript& t) {
    const json j = {{"request_snapshot", t.request_snapshot},
                    {"response_text", t.response_text},
                    {"recorded_at", t.recorded_at}};
    std::lock_guard lock(mu_);
    std::filesystem::create_directories(dir_);
    const auto final_path = path_for(t.key);
    auto tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw TransportError("cannot write transcript " + tmp.string());
      out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, final_path);
  }

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
};

namespace llm_detail {

inline std::string fill_endpoint(const ProviderConfig& p) {
  std::string url = p.endpoint;
  for (auto pos = url.find("{model}"); pos != std::string::npos; pos = url.find("{model}")) {
    url.replace(pos, 7, p.model_id);
  }
  return url;
}

inline std::string data_url(const Attachment& a) { return "data:" + a.media_type + ";base64," + base64_encode(a.bytes); }

inline HttpRequest openai_request(const ProviderConfig& p, const PromptBundle& b, const std::string& token) {
  json content = json::array({{{"type", "text"}, {"text", b.user_text}}});
  for (const auto& a : b.attachments) {
    if (!a.caption.empty()) content.push_back({{"type", "text"}, {"text", a.caption}});
    content.push_back({{"type", "image_url"}, {"image_url", {{"url", data_url(a)}}}});
  }
  const json body = {{"model", p.model_id},
                     {"temperature", p.temperature},
                     {"max_tokens", p.max_output_tokens},
                     {"messages",
                      json::array({{{"role", "system"}, {"content", b.system_text}},
                                   {{"role", "user"}, {"content", std::move(content)}}})}};
  return HttpRequest{"POST", fill_endpoint(p), {{"Authorization", "Bearer " + token}}, body.dump(), "application/json"};
}

inline HttpRequest anthropic_request(const ProviderConfig& p, const PromptBundle& b, const std::string& token) {
  json content = json::array();
  for (const auto& a : b.attachments) {
    content.push_back(
        {{"type", "image"},
         {"source", {{"type", "base64"}, {"media_type", a.media_type}, {"data", base64_encode(a.bytes)}}}});
    if (!a.caption.empty()) content.push_back({{"type", "text"}, {"text", a.caption}});
  }
  content.push_back({{"type", "text"}, {"text", b.user_text}});
  const json body = {{"model", p.model_id},
                     {"max_tokens", p.max_output_tokens},
                     {"temperature", p.temperature},
                     {"system", b.system_text},
                     {"messages", json::array({{{"role", "user"}, {"content", std::move(content)}}})}};
  return HttpRequest{"POST",
                     fill_endpoint(p),
                     {{"x-api-key", token}, {"anthropic-version", "2023-06-01"}},
                     body.dump(),
                     "application/json"};
}

inline HttpRequest gemini_request(const ProviderConfig& p, const PromptBundle& b, const std::string& token) {
  json parts = json::array({{{"text", b.user_text}}});
  for (const auto& a : b.attachments) {
    if (!a.caption.empty()) parts.push_back({{"text", a.caption}});
    parts.push_back({{"inline_data", {{"mime_type", a.media_type}, {"data", base64_encode(a.bytes)}}}});
  }
  const json body = {
      {"system_instruction", {{"parts", json::array({{{"text", b.system_text}}})}}},
      {"contents", json::array({{{"role", "user"}, {"parts", std::move(parts)}}})},
      {"generationConfig", {{"temperature", p.temperature}, {"maxOutputTokens", p.max_output_tokens}}}};
  return HttpRequest{"POST", fill_endpoint(p), {{"x-goog-api-key", token}}, body.dump(), "application/json"};
}

inline std::string response_text(const ProviderConfig& p, const std::string& body) {
  const json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw TransportError(p.name + ": response is not JSON");
  try {
    if (p.api == "openai") return j.at("choices").at(0).at("message").at("content").get<std::string>();
    std::string text;
    if (p.api == "anthropic") {
      for (const auto& block : j.at("content")) {
        if (block.value("type", "") == "text") text += block.at("text").get<std::string>();
      }
      return text;
    }
    for (const auto& part : j.at("candidates").at(0).at("content").at("parts")) {
      if (part.contains("text")) text += part.at("text").get<std::string>();
    }
    return text;
  } catch (const json::exception& e) {
    throw TransportError(p.name + ": unexpected response shape: " + e.what());
  }
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace llm_detail

inline HttpRequest build_provider_request(const ProviderConfig& p, const PromptBundle& b, const std::string& token) {
  if (p.api == "openai") return llm_detail::openai_request(p, b, token);
  if (p.api == "anthropic") return llm_detail::anthropic_request(p, b, token);
  if (p.api == "gemini") return llm_detail::gemini_request(p, b, token);
  throw SchemaError("provider '" + p.name + "': unknown api '" + p.api + "'");
}

// Side channels of invoke(), injectable for tests.
struct InvokeContext {
  Transport* transport = nullptr;
  std::function<std::optional<std::string>(const std::string&)> env = [](const std::string& name) {
    const char* v = std::getenv(name.c_str());
    return v ? std::optional<std::string>(v) : std::nullopt;
  };
  std::function<std::string()> clock = llm_detail::utc_now;
  std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
};

// One model call. Replay never touches the transport; live and record need
// the provider's token in the environment before any request is made.
inline std::string invoke(const ProviderConfig& p, const PromptBundle& bundle, TranscriptStore* store, IoMode io,
                          const InvokeContext& ctx) {
  validate_bundle(bundle);
  const std::string key = transcript_key(p, bundle);
  if (io == IoMode::replay) {
    if (!store) throw ReplayMiss("replay needs a transcript store");
    auto t = store->find(key);
    if (!t) throw ReplayMiss("no transcript " + key + " for provider '" + p.name + "'");
    return t->response_text;
  }
  if (io == IoMode::record && !store) throw TransportError("record needs a transcript store");

  const auto token = ctx.env ? ctx.env(p.auth_token_env) : std::nullopt;
  if (!token || token->empty()) {
    throw AuthError("provider '" + p.name + "': environment variable " + p.auth_token_env + " is not set");
  }
  if (!ctx.transport) throw TransportError("no transport configured");
  const HttpRequest request = build_provider_request(p, bundle, *token);

  auto backoff = ctx.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    const bool last = attempt >= ctx.max_attempts;
    std::optional<HttpResponse> res;
    try {
      res = ctx.transport->send(request);
    } catch (const TransportError&) {
      if (last) throw;
    }
    if (res) {
      if (res->status == 401 || res->status == 403) {
        throw AuthError("provider '" + p.name + "' rejected the credentials (HTTP " + std::to_string(res->status) + ")");
      }
      if (res->status >= 200 && res->status < 300) {
        std::string text = llm_detail::response_text(p, res->body);
        if (io == IoMode::record) store->put(Transcript{key, request_snapshot(p, bundle), text, ctx.clock()});
        return text;
      }
      const bool retryable = res->status == 429 || res->status >= 500;
      if (!retryable || last) {
        const std::string msg = "provider '" + p.name + "' answered HTTP " + std::to_string(res->status);
        if (res->status == 429) throw RateLimited(msg + " after " + std::to_string(attempt) + " attempts");
        throw TransportError(msg);
      }
    }
    if (ctx.sleep) ctx.sleep(backoff);
    backoff *= 2;
  }
}

}  // namespace detour
