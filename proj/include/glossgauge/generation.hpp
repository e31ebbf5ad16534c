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

#ifndef GLOSSGAUGE_GENERATION_HPP_
#define GLOSSGAUGE_GENERATION_HPP_

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "glossgauge/error.hpp"
#include "glossgauge/http.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/prompting.hpp"
#include "glossgauge/text.hpp"

namespace glossgauge::generation {

namespace fs = std::filesystem;
using json = nlohmann::json;

enum class BackendKind { kHttpChat, kStub };

inline BackendKind parse_backend(std::string_view s) {
  if (s == "http_chat") return BackendKind::kHttpChat;
  if (s == "stub") return BackendKind::kStub;
  throw UsageError("generation backend must be 'http_chat' or 'stub', got '" + std::string(s) + "'");
}

inline std::string_view backend_name(BackendKind k) {
  return k == BackendKind::kHttpChat ? "http_chat" : "stub";
}

struct GenerationConfig {
  BackendKind backend = BackendKind::kStub;
  std::string endpoint;  // http_chat only
  std::string model_name = "stub";
  int samples_per_template = 5;
  // nullopt leaves temperature to the backend's default.
  std::optional<double> temperature;
  int max_retries = 3;
  std::chrono::milliseconds request_timeout{60000};
  std::chrono::milliseconds retry_base_delay{500};
  double rate_limit = 0.0;  // requests/second, 0 = unlimited
  std::uint64_t stub_seed = 42;
  int parallelism = 4;      // concurrent terms
};

inline void validate(const GenerationConfig& cfg) {
  if (cfg.samples_per_template < 1) throw UsageError("samples_per_template must be >= 1");
  if (cfg.max_retries < 0) throw UsageError("max_retries must be >= 0");
  if (cfg.parallelism < 1) throw UsageError("parallelism must be >= 1");
  if (cfg.model_name.empty()) throw UsageError("model_name must be set");
  if (cfg.backend == BackendKind::kHttpChat && cfg.endpoint.empty()) {
    throw UsageError("http_chat backend requires an endpoint");
  }
}

namespace detail {

inline constexpr std::array<std::string_view, 48> kStubVocabulary = {
    "process",     "change",       "climate",     "system",      "energy",     "human",
    "natural",     "emissions",    "carbon",      "land",        "water",      "ocean",
    "atmosphere",  "resources",    "management",  "sustainable", "adaptation", "risk",
    "population",  "vulnerable",   "temperature", "surface",     "global",     "regional",
    "policy",      "development",  "economic",    "social",      "impacts",    "long",
    "term",        "measures",     "reduction",   "increase",    "capacity",   "communities",
    "ecosystems",  "biodiversity", "forest",      "agriculture", "greenhouse", "gases",
    "variability", "response",     "pathway",     "future",      "observed",   "conditions"};

inline constexpr std::array<std::string_view, 6> kStubLinks = {"of", "and", "in", "that", "for",
                                                               "with"};

// Text between the first pair of straight double quotes.
inline std::optional<std::string> quoted_subject(std::string_view prompt) {
  const auto open = prompt.find('"');
  if (open == std::string_view::npos) return std::nullopt;
  const auto close = prompt.find('"', open + 1);
  if (close == std::string_view::npos || close == open + 1) return std::nullopt;
  return std::string(prompt.substr(open + 1, close - open - 1));
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// Offline pseudo-definition. Integer-only, so it is identical on every
// platform: a SplitMix64 stream seeded by FNV-1a over (prompt, index, seed)
// picks 8..17 words from a fixed vocabulary.
inline std::string stub_complete(std::string_view prompt, int sample_index, std::uint64_t seed) {
  std::uint64_t h = text::fnv1a64(prompt);
  h = text::fnv1a64("\x1f" + std::to_string(sample_index) + "\x1f" + std::to_string(seed), h);
  std::uint64_t counter = 0;
  auto next = [&] { return text::splitmix64(h + 0x9E3779B97F4A7C15ULL * counter++); };

  std::string out = detail::quoted_subject(prompt).value_or("It");
  out += (next() & 1) ? " is the " : " is a ";
  const auto n_words = 8 + next() % 10;
  for (std::uint64_t i = 0; i < n_words; ++i) {
    if (i > 0) {
      out += ' ';
      if (next() % 4 == 0) {
        out += detail::kStubLinks[next() % detail::kStubLinks.size()];
        out += ' ';
      }
    }
    out += detail::kStubVocabulary[next() % detail::kStubVocabulary.size()];
  }
  out += '.';
  return out;
}

struct Reply {
  std::string text;
  json metadata = json::object();
};

// Backends count every completion request they serve.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual Reply complete(const std::string& prompt, int sample_index) = 0;
  std::size_t calls() const { return calls_.load(); }

 protected:
  std::atomic<std::size_t> calls_{0};
};

class StubBackend final : public ChatBackend {
 public:
  explicit StubBackend(std::uint64_t seed) : seed_(seed) {}
  Reply complete(const std::string& prompt, int sample_index) override {
    calls_.fetch_add(1);
    return {stub_complete(prompt, sample_index, seed_),
            {{"backend", "stub"}, {"seed", seed_}}};
  }

 private:
  std::uint64_t seed_;
};

// OpenAI-compatible chat completions. One request per sample (n = 1) with a
// single user message and no system prompt.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(const GenerationConfig& cfg)
      : model_(cfg.model_name),
        temperature_(cfg.temperature),
        client_(cfg.endpoint,
                http::RetryPolicy{cfg.max_retries, cfg.retry_base_delay, cfg.request_timeout},
                cfg.rate_limit) {}

  Reply complete(const std::string& prompt, int /*sample_index*/) override {
    calls_.fetch_add(1);
    json body = {{"model", model_},
                 {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                 {"n", 1}};
    if (temperature_) body["temperature"] = *temperature_;
    const json reply = client_.post("/v1/chat/completions", body);
    const auto* choices = reply.contains("choices") ? &reply["choices"] : nullptr;
    if (choices == nullptr || !choices->is_array() || choices->empty() ||
        !(*choices)[0].contains("message")) {
      throw BackendError("chat reply has no choices[0].message");
    }
    const auto& content = (*choices)[0]["message"].value("content", json());
    Reply out;
    out.text = content.is_string() ? content.get<std::string>() : std::string();
    out.metadata = {{"backend", "http_chat"}, {"model", reply.value("model", model_)}};
    if (reply.contains("id")) out.metadata["id"] = reply["id"];
    if ((*choices)[0].contains("finish_reason")) {
      out.metadata["finish_reason"] = (*choices)[0]["finish_reason"];
    }
    return out;
  }

  std::size_t http_attempts() const { return client_.attempts(); }

 private:
  std::string model_;
  std::optional<double> temperature_;
  http::JsonClient client_;
};

inline std::unique_ptr<ChatBackend> make_backend(const GenerationConfig& cfg) {
  validate(cfg);
  if (cfg.backend == BackendKind::kStub) return std::make_unique<StubBackend>(cfg.stub_seed);
  return std::make_unique<HttpChatBackend>(cfg);
}

struct CacheKey {
  std::string model_name;
  std::string template_id;
  std::string prompt;
  int sample_index = 0;

  // Content address of the key tuple.
  std::string digest() const {
    std::uint64_t h = text::fnv1a64(model_name);
    for (std::string_view part : {std::string_view(template_id), std::string_view(prompt)}) {
      h = text::fnv1a64("\x1f", h);
      h = text::fnv1a64(part, h);
    }
    h = text::fnv1a64("\x1f" + std::to_string(sample_index), h);
    return text::hex64(h);
  }
  auto tie() const { return std::tie(model_name, template_id, prompt, sample_index); }
  bool operator<(const CacheKey& o) const { return tie() < o.tie(); }
  bool operator==(const CacheKey& o) const { return tie() == o.tie(); }
};

struct CachedCompletion {
  std::string text;
  std::string timestamp;
  json metadata;
};

// Completion store under `dir`/completions.jsonl. An empty dir keeps it in
// memory only. All methods are thread-safe; flush() replaces the file
// atomically.
class CompletionCache {
 public:
  CompletionCache() = default;
  explicit CompletionCache(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty() && fs::exists(file())) {
      for (const auto& rec : io::read_jsonl(file())) {
        CacheKey key{rec.at("model_name").get<std::string>(),
                     rec.at("template_id").get<std::string>(), rec.at("prompt").get<std::string>(),
                     rec.at("sample_index").get<int>()};
        entries_[key] = {rec.at("text").get<std::string>(), rec.value("timestamp", ""),
                         rec.value("metadata", json::object())};
      }
    }
  }

  std::optional<CachedCompletion> get(const CacheKey& key) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void put(const CacheKey& key, CachedCompletion value) {
    std::lock_guard lock(mu_);
    entries_[key] = std::move(value);
    dirty_ = true;
  }

  void flush() {
    std::lock_guard lock(mu_);
    if (!dirty_ || dir_.empty()) return;
    std::vector<json> records;
    records.reserve(entries_.size());
    for (const auto& [key, value] : entries_) {
      records.push_back({{"key", key.digest()},
                         {"model_name", key.model_name},
                         {"template_id", key.template_id},
                         {"prompt", key.prompt},
                         {"sample_index", key.sample_index},
                         {"text", value.text},
                         {"timestamp", value.timestamp},
                         {"metadata", value.metadata}});
    }
    io::atomic_write(file(), io::to_jsonl(records));
    dirty_ = false;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

  fs::path file() const { return dir_ / "completions.jsonl"; }

 private:
  fs::path dir_;
  mutable std::mutex mu_;
  std::map<CacheKey, CachedCompletion> entries_;
  bool dirty_ = false;
};

struct Completion {
  std::string template_id;
  int sample_index = 0;
  std::string prompt;
  std::string text;
  std::string timestamp;
  json metadata = json::object();
  bool empty = false;  // warning flag: backend returned no text

  bool operator==(const Completion&) const = default;
};

// Completions in (template order, sample index) order, never arrival order.
struct CompletionSet {
  std::string term;
  std::string model_name;
  std::vector<Completion> completions;

  const Completion& at(std::string_view template_id, int sample_index) const {
    for (const auto& c : completions) {
      if (c.template_id == template_id && c.sample_index == sample_index) return c;
    }
    throw UsageError("no completion for (" + std::string(template_id) + ", " +
                     std::to_string(sample_index) + ")");
  }
  std::size_t size() const { return completions.size(); }
  bool operator==(const CompletionSet&) const = default;
};

inline json to_json(const CompletionSet& set) {
  json items = json::array();
  for (const auto& c : set.completions) {
    items.push_back({{"template_id", c.template_id},
                     {"sample_index", c.sample_index},
                     {"prompt", c.prompt},
                     {"text", c.text},
                     {"timestamp", c.timestamp},
                     {"metadata", c.metadata},
                     {"empty", c.empty}});
  }
  return {{"term", set.term}, {"model_name", set.model_name}, {"completions", items}};
}

inline CompletionSet completion_set_from_json(const json& j) {
  CompletionSet set{j.at("term").get<std::string>(), j.at("model_name").get<std::string>(), {}};
  for (const auto& c : j.at("completions")) {
    set.completions.push_back({c.at("template_id").get<std::string>(),
                               c.at("sample_index").get<int>(), c.at("prompt").get<std::string>(),
                               c.at("text").get<std::string>(), c.value("timestamp", ""),
                               c.value("metadata", json::object()), c.value("empty", false)});
  }
  return set;
}

class PartialResultsError : public BackendError {
 public:
  PartialResultsError(const std::string& what, CompletionSet done)
      : BackendError(what), partial(std::move(done)) {}
  CompletionSet partial;
};

// Fills one term's completions, cache first. New completions are flushed to
// the cache before returning or throwing.
inline CompletionSet generate_for_term(const std::string& term,
                                       const std::vector<prompting::PromptTemplate>& templates,
                                       const GenerationConfig& cfg, CompletionCache& cache,
                                       ChatBackend& backend) {
  validate(cfg);
  CompletionSet set{term, cfg.model_name, {}};
  for (const auto& tmpl : templates) {
    const std::string prompt = prompting::render(tmpl, term);
    for (int s = 0; s < cfg.samples_per_template; ++s) {
      const CacheKey key{cfg.model_name, tmpl.id, prompt, s};
      auto hit = cache.get(key);
      if (!hit) {
        Reply reply;
        try {
          reply = backend.complete(prompt, s);
        } catch (const BackendError& e) {
          cache.flush();
          throw PartialResultsError("term \"" + term + "\": " + e.what(), std::move(set));
        }
        hit = CachedCompletion{text::trim(reply.text), detail::utc_timestamp(),
                               std::move(reply.metadata)};
        cache.put(key, *hit);
      }
      const bool empty = hit->text.empty();
      set.completions.push_back(
          {tmpl.id, s, prompt, std::move(hit->text), std::move(hit->timestamp),
           std::move(hit->metadata), empty});
    }
  }
  cache.flush();
  return set;
}

}  // namespace glossgauge::generation

#endif  // GLOSSGAUGE_GENERATION_HPP_
