#include "rel/harness/endpoint.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "rel/core/error.hpp"

namespace rel::harness {
namespace {

constexpr std::string_view kSuffix = "/chat/completions";

bool ends_with(const std::string& s, std::string_view t) {
  return s.size() >= t.size() && s.compare(s.size() - t.size(), t.size(), t) == 0;
}

struct Attempt {
  bool ok = false;
  bool retryable = false;
  int status = 0;
  std::string text;
  std::string error;
  Json usage = nullptr;
};

Attempt parse_body(int status, const std::string& body) {
  Attempt a;
  a.status = status;
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    a.error = "malformed response body";
    return a;
  }
  const Json* content = nullptr;
  if (auto c = j.find("choices"); c != j.end() && c->is_array() && !c->empty()) {
    const Json& first = (*c)[0];
    if (auto m = first.find("message"); m != first.end() && m->is_object()) {
      if (auto t = m->find("content"); t != m->end()) content = &*t;
    }
  }
  if (!content || !(content->is_string() || content->is_null())) {
    a.error = "malformed response body: no choices[0].message.content";
    return a;
  }
  a.ok = true;
  a.text = content->is_string() ? content->get<std::string>() : "";
  if (auto u = j.find("usage"); u != j.end()) a.usage = *u;
  return a;
}

}  // namespace

void EndpointConfig::validate() const {
  if (base_url.empty()) throw ParameterError("endpoint: base_url is empty");
  if (model.empty()) throw ParameterError("endpoint: model is empty");
  if (max_tokens <= 0) throw ParameterError("endpoint: max_tokens must be > 0");
  if (parallel < 1) throw ParameterError("endpoint: parallelism must be >= 1");
  if (retry.retries < 0 || retry.backoff_s < 0)
    throw ParameterError("endpoint: retry count and backoff must be >= 0");
  split_endpoint(base_url);
}

std::pair<std::string, std::string> split_endpoint(const std::string& base_url) {
  auto scheme = base_url.find("://");
  if (scheme == std::string::npos)
    throw ParameterError("endpoint URL needs a scheme: " + base_url);
  auto slash = base_url.find('/', scheme + 3);
  std::string host = base_url.substr(0, slash);
  std::string path = slash == std::string::npos ? "" : base_url.substr(slash);
  while (!path.empty() && path.back() == '/') path.pop_back();
  if (!ends_with(path, kSuffix)) path += kSuffix;
  return {host, path};
}

CallResult call_model(const EndpointConfig& cfg, const std::string& prompt,
                      double temperature) {
  const auto [host, path] = split_endpoint(cfg.base_url);
  std::string key = cfg.api_key;
  if (key.empty()) {
    if (const char* env = std::getenv("REL_API_KEY")) key = env;
  }
  Json body = {{"model", cfg.model},
               {"messages", Json::array({{{"role", "user"}, {"content", prompt}}})},
               {"max_tokens", cfg.max_tokens},
               {"temperature", temperature}};
  const std::string payload = body.dump();

  httplib::Client cli(host);
  const auto secs = static_cast<time_t>(cfg.timeout_s);
  const auto usecs = static_cast<time_t>((cfg.timeout_s - static_cast<double>(secs)) * 1e6);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (!key.empty()) headers.emplace("Authorization", "Bearer " + key);

  CallResult out;
  const auto t0 = std::chrono::steady_clock::now();
  double wait = cfg.retry.backoff_s;
  for (int attempt = 0; attempt <= cfg.retry.retries; ++attempt) {
    if (attempt > 0 && wait > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(wait));
      wait *= cfg.retry.backoff_mult;
    }
    ++out.attempts;
    Attempt a;
    auto res = cli.Post(path, headers, payload, "application/json");
    if (!res) {
      a.retryable = true;
      a.error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status == 401 || res->status == 403) {
      a.status = res->status;
      a.error = "auth error: HTTP " + std::to_string(res->status);
    } else if (res->status == 429) {
      a.status = res->status;
      a.retryable = true;
      a.error = "rate limited: HTTP 429";
    } else if (res->status >= 500) {
      a.status = res->status;
      a.retryable = true;
      a.error = "server error: HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      a.status = res->status;
      a.error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
    } else {
      a = parse_body(res->status, res->body);
    }
    out.http_status = a.status;
    if (a.ok) {
      out.ok = true;
      out.text = std::move(a.text);
      out.usage = std::move(a.usage);
      out.error.clear();
      break;
    }
    out.error = a.error;
    if (!a.retryable) break;
  }
  out.latency_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

ModelCaller http_caller(EndpointConfig cfg) {
  cfg.validate();
  return [cfg = std::move(cfg)](const std::string& prompt, double temperature) {
    return call_model(cfg, prompt, temperature);
  };
}

}  // namespace rel::harness
