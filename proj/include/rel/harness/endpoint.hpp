#pragma once

#include <functional>
#include <string>

#include "rel/core/task.hpp"

namespace rel::harness {

struct RetryPolicy {
  int retries = 3;          // extra attempts after the first
  double backoff_s = 2.0;   // wait before the first retry
  double backoff_mult = 2.0;
};

struct EndpointConfig {
  std::string base_url;  // ".../v1" or a full ".../chat/completions" URL
  std::string model;
  int max_tokens = 4096;
  double timeout_s = 600.0;
  int parallel = 4;
  RetryPolicy retry;
  std::string api_key;  // falls back to REL_API_KEY when empty

  void validate() const;
};

struct CallResult {
  bool ok = false;
  std::string text;
  std::string error;  // empty when ok
  int http_status = 0;
  int attempts = 0;
  double latency_s = 0.0;
  Json usage = nullptr;
};

// Anything that turns a prompt into a completion. Must be thread-safe.
using ModelCaller =
    std::function<CallResult(const std::string& prompt, double temperature)>;

// Splits "http://host:port/v1" into {"http://host:port", "/v1/chat/completions"}.
std::pair<std::string, std::string> split_endpoint(const std::string& base_url);

// One chat completion with retries on transport errors, 5xx and 429.
// Never throws for remote failures; they come back with ok=false.
CallResult call_model(const EndpointConfig& cfg, const std::string& prompt,
                      double temperature);

ModelCaller http_caller(EndpointConfig cfg);

}  // namespace rel::harness
