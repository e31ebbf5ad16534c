// Copyright 2026 The GlossGauge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal JSON-over-HTTP client used by the chat and embedding backends:
// endpoint parsing, a shared rate limiter and retry with exponential backoff.

#ifndef GLOSSGAUGE_HTTP_HPP_
#define GLOSSGAUGE_HTTP_HPP_

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "glossgauge/error.hpp"

namespace glossgauge::http {

using json = nlohmann::json;

inline constexpr const char* kApiKeyEnv = "GLOSSGAUGE_API_KEY";

inline std::optional<std::string> api_key_from_env() {
  const char* v = std::getenv(kApiKeyEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

struct Endpoint {
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // no trailing slash, may be empty
};

inline Endpoint parse_endpoint(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos || url.empty()) {
    throw UsageError("endpoint must look like http[s]://host[:port][/prefix], got '" +
                     std::string(url) + "'");
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw UsageError("unsupported endpoint scheme '" + std::string(scheme) + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.origin = std::string(url.substr(0, path_start));
  if (path_start != std::string_view::npos) ep.path_prefix = std::string(url.substr(path_start));
  while (!ep.path_prefix.empty() && ep.path_prefix.back() == '/') ep.path_prefix.pop_back();
  return ep;
}

// Spaces calls at least 1/rate seconds apart. A rate <= 0 disables limiting.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second = 0.0)
      : interval_(requests_per_second > 0
                      ? std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(1.0 / requests_per_second))
                      : std::chrono::steady_clock::duration::zero()) {}

  void acquire() {
    if (interval_ == std::chrono::steady_clock::duration::zero()) return;
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(mu_);
      const auto now = std::chrono::steady_clock::now();
      slot = std::max(now, next_);
      next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }

 private:
  std::chrono::steady_clock::duration interval_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds timeout{60000};
};

// Thread-safe: every request builds its own httplib::Client.
class JsonClient {
 public:
  JsonClient(std::string_view endpoint, RetryPolicy retry, double rate_limit,
             std::optional<std::string> bearer = api_key_from_env())
      : endpoint_(parse_endpoint(endpoint)),
        retry_(retry),
        limiter_(rate_limit),
        bearer_(std::move(bearer)) {}

  // POSTs `body` to prefix + path. Transport errors, non-2xx statuses and
  // unparsable replies are retried; the last failure is thrown as BackendError.
  json post(std::string_view path, const json& body) {
    const std::string full_path = endpoint_.path_prefix + std::string(path);
    const std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt <= retry_.max_retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(retry_.base_delay * (1LL << (attempt - 1)));
      limiter_.acquire();
      attempts_.fetch_add(1);
      httplib::Client client(endpoint_.origin);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(retry_.timeout);
      const auto usecs =
          std::chrono::duration_cast<std::chrono::microseconds>(retry_.timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_write_timeout(secs.count(), usecs.count());
      httplib::Headers headers;
      if (bearer_) headers.emplace("Authorization", "Bearer " + *bearer_);
      auto res = client.Post(full_path, headers, payload, "application/json");
      if (!res) {
        last_error = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        last_error = "HTTP status " + std::to_string(res->status);
        continue;
      }
      auto parsed = json::parse(res->body, nullptr, false);
      if (parsed.is_discarded()) {
        last_error = "reply is not JSON";
        continue;
      }
      return parsed;
    }
    throw BackendError(endpoint_.origin + full_path + ": " + last_error + " after " +
                       std::to_string(retry_.max_retries + 1) + " attempt(s)");
  }

  std::size_t attempts() const { return attempts_.load(); }

 private:
  Endpoint endpoint_;
  RetryPolicy retry_;
  RateLimiter limiter_;
  std::optional<std::string> bearer_;
  std::atomic<std::size_t> attempts_{0};
};

}  // namespace glossgauge::http

#endif  // GLOSSGAUGE_HTTP_HPP_
