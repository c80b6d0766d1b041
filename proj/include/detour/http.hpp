#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>

#include "detour/errors.hpp"

namespace detour {

struct HttpRequest {
  std::string method = "POST";
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type = "application/json";
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Where provider and directions calls go. Tests substitute recorders.
class Transport {
 public:
  virtual ~Transport() = default;
  // Throws TransportError when no response arrives at all.
  virtual HttpResponse send(const HttpRequest& request) = 0;
};

class HttplibTransport final : public Transport {
 public:
  explicit HttplibTransport(int timeout_s = 120) : timeout_s_(timeout_s) {}

  HttpResponse send(const HttpRequest& request) override {
    const auto [origin, path] = split_url(request.url);
    httplib::Client client(origin);
    client.set_connection_timeout(timeout_s_);
    client.set_read_timeout(timeout_s_);
    client.set_write_timeout(timeout_s_);
    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    httplib::Result res = request.method == "GET"
                              ? client.Get(path, headers)
                              : client.Post(path, headers, request.body, request.content_type);
    if (!res) throw TransportError(request.method + " " + origin + ": " + httplib::to_string(res.error()));
    return HttpResponse{res->status, res->body};
  }

  // "https://host:port/a/b?q" -> {"https://host:port", "/a/b?q"}
  static std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("not an absolute URL: '" + url + "'");
    const auto path_begin = url.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) return {url, "/"};
    return {url.substr(0, path_begin), url.substr(path_begin)};
  }

 private:
  int timeout_s_;
};

// Records every request and answers from a handler, or refuses when there is
// none. Used to prove that offline paths stay offline.
class RecordingTransport final : public Transport {
 public:
  using Handler = std::function<HttpResponse(const HttpRequest&)>;

  RecordingTransport() = default;
  explicit RecordingTransport(Handler handler) : handler_(std::move(handler)) {}

  HttpResponse send(const HttpRequest& request) override {
    {
      std::lock_guard lock(mu_);
      requests_.push_back(request);
    }
    if (!handler_) throw TransportError("network access is disabled: " + request.url);
    return handler_(request);
  }

  std::size_t calls() const {
    std::lock_guard lock(mu_);
    return requests_.size();
  }
  std::vector<HttpRequest> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

 private:
  Handler handler_;
  mutable std::mutex mu_;
  std::vector<HttpRequest> requests_;
};

}  // namespace detour
