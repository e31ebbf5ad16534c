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

#ifndef GLOSSGAUGE_EMBEDDING_HPP_
#define GLOSSGAUGE_EMBEDDING_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glossgauge/error.hpp"
#include "glossgauge/http.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/text.hpp"

namespace glossgauge::embedding {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct EmbeddingVector {
  std::vector<double> values;
  std::string provider_id;

  std::size_t dimension() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

inline double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Unit-normalizes in place; a zero vector becomes e0.
inline void normalize(std::vector<double>& v) {
  if (v.empty()) return;
  const double n = l2_norm(v);
  if (n == 0.0 || !std::isfinite(n)) {
    std::fill(v.begin(), v.end(), 0.0);
    v[0] = 1.0;
    return;
  }
  for (double& x : v) x /= n;
}

// Rounds to 9 significant digits, the precision the embedding cache stores.
inline double quantize(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return std::strtod(buf, nullptr);
}

inline std::string hashed_stub_id(int dimension, std::uint64_t seed) {
  return "hashed_stub/d" + std::to_string(dimension) + "/s" + std::to_string(seed);
}

// Token-hash histogram: lowercase, split on non-alphanumerics, add one to
// bucket fnv1a64(token) mod dimension, L2-normalize. No tokens gives e0.
// A nonzero seed is XORed into each token hash before the modulo.
inline EmbeddingVector hashed_stub_embed(std::string_view txt, int dimension,
                                         std::uint64_t seed = 0) {
  if (dimension < 8) throw UsageError("hashed_stub dimension must be >= 8");
  std::vector<double> counts(static_cast<std::size_t>(dimension), 0.0);
  for (const auto& token : text::hash_tokens(txt)) {
    const auto bucket = (text::fnv1a64(token) ^ seed) % static_cast<std::uint64_t>(dimension);
    counts[bucket] += 1.0;
  }
  normalize(counts);
  return {std::move(counts), hashed_stub_id(dimension, seed)};
}

// Dot product of unit vectors, clamped to [-1, 1].
inline double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.provider_id != b.provider_id) {
    throw UsageError("cosine_similarity: provider mismatch (" + a.provider_id + " vs " +
                     b.provider_id + ")");
  }
  if (a.dimension() != b.dimension()) {
    throw UsageError("cosine_similarity: dimension mismatch (" + std::to_string(a.dimension()) +
                     " vs " + std::to_string(b.dimension()) + ")");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
  return std::clamp(dot, -1.0, 1.0);
}

enum class ProviderKind { kHttp, kHashedStub };

inline ProviderKind parse_provider_kind(std::string_view s) {
  if (s == "http") return ProviderKind::kHttp;
  if (s == "hashed_stub") return ProviderKind::kHashedStub;
  throw UsageError("embedder must be 'http' or 'hashed_stub', got '" + std::string(s) + "'");
}

struct EmbeddingProviderConfig {
  ProviderKind kind = ProviderKind::kHashedStub;
  std::string endpoint;  // http only
  std::string model;     // http only
  int dimension = 256;   // required for hashed_stub; for http 0 means "learn from replies"
  std::uint64_t seed = 0;
  int batch_size = 32;
  fs::path cache_dir;
  int max_retries = 3;
  std::chrono::milliseconds request_timeout{60000};
  std::chrono::milliseconds retry_base_delay{500};
  double rate_limit = 0.0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string id() const = 0;
  // Raw (unnormalized) vectors, one per text, in order.
  virtual std::vector<std::vector<double>> embed_raw(const std::vector<std::string>& texts) = 0;
  // 0 when not yet known.
  virtual std::size_t dimension() const = 0;
  std::size_t calls() const { return calls_.load(); }

 protected:
  std::atomic<std::size_t> calls_{0};
};

class HashedStubProvider final : public EmbeddingProvider {
 public:
  HashedStubProvider(int dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
    if (dimension < 8) throw UsageError("hashed_stub dimension must be >= 8");
  }
  std::string id() const override { return hashed_stub_id(dimension_, seed_); }
  std::vector<std::vector<double>> embed_raw(const std::vector<std::string>& texts) override {
    calls_.fetch_add(1);
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(hashed_stub_embed(t, dimension_, seed_).values);
    return out;
  }
  std::size_t dimension() const override { return static_cast<std::size_t>(dimension_); }

 private:
  int dimension_;
  std::uint64_t seed_;
};

// POST <endpoint>/v1/embeddings {"model", "input": [...]} -> data[i].embedding.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(const EmbeddingProviderConfig& cfg)
      : model_(cfg.model),
        client_(cfg.endpoint,
                http::RetryPolicy{cfg.max_retries, cfg.retry_base_delay, cfg.request_timeout},
                cfg.rate_limit),
        dimension_(cfg.dimension > 0 ? static_cast<std::size_t>(cfg.dimension) : 0) {
    if (cfg.endpoint.empty()) throw UsageError("http embedder requires an endpoint");
  }

  std::string id() const override { return "http/" + model_; }

  std::vector<std::vector<double>> embed_raw(const std::vector<std::string>& texts) override {
    calls_.fetch_add(1);
    const json reply = client_.post("/v1/embeddings", {{"model", model_}, {"input", texts}});
    if (!reply.contains("data") || !reply["data"].is_array() ||
        reply["data"].size() != texts.size()) {
      throw BackendError("embeddings reply does not carry one data item per input");
    }
    std::vector<std::vector<double>> out(texts.size());
    const auto& data = reply["data"];
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
      const auto& item = data[pos];
      const auto index = item.value("index", pos);
      if (index >= out.size() || !item.contains("embedding")) {
        throw BackendError("embeddings reply item is malformed");
      }
      out[index] = item["embedding"].get<std::vector<double>>();
    }
    return out;
  }

  std::size_t dimension() const override { return dimension_.load(); }
  void learn_dimension(std::size_t d) {
    std::size_t expected = 0;
    dimension_.compare_exchange_strong(expected, d);
  }

 private:
  std::string model_;
  http::JsonClient client_;
  std::atomic<std::size_t> dimension_;
};

inline std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderConfig& cfg) {
  if (cfg.batch_size < 1) throw UsageError("embedding batch_size must be >= 1");
  if (cfg.kind == ProviderKind::kHashedStub) {
    return std::make_unique<HashedStubProvider>(cfg.dimension, cfg.seed);
  }
  return std::make_unique<HttpEmbeddingProvider>(cfg);
}

// Vectors keyed by (provider_id, fnv1a64(text)) in `dir`/embeddings.jsonl.
class EmbeddingCache {
 public:
  EmbeddingCache() = default;
  explicit EmbeddingCache(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty() && fs::exists(file())) {
      for (const auto& rec : io::read_jsonl(file())) {
        entries_[{rec.at("provider_id").get<std::string>(), rec.at("text_hash").get<std::string>()}] =
            rec.at("values").get<std::vector<double>>();
      }
    }
  }

  static std::string text_hash(std::string_view txt) { return text::hex64(text::fnv1a64(txt)); }

  std::optional<std::vector<double>> get(const std::string& provider_id,
                                         std::string_view txt) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find({provider_id, text_hash(txt)});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& provider_id, std::string_view txt, std::vector<double> values) {
    std::lock_guard lock(mu_);
    entries_[{provider_id, text_hash(txt)}] = std::move(values);
    dirty_ = true;
  }

  void flush() {
    std::lock_guard lock(mu_);
    if (!dirty_ || dir_.empty()) return;
    std::vector<json> records;
    records.reserve(entries_.size());
    for (const auto& [key, values] : entries_) {
      records.push_back({{"provider_id", key.first}, {"text_hash", key.second}, {"values", values}});
    }
    io::atomic_write(file(), io::to_jsonl(records));
    dirty_ = false;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }
  fs::path file() const { return dir_ / "embeddings.jsonl"; }

 private:
  fs::path dir_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::vector<double>> entries_;
  bool dirty_ = false;
};

// One unit vector per text, order preserved. Texts that are empty after
// trimming map to e0 without a provider call; their indices are reported
// through `empty_indices` when given. Fresh vectors are normalized and
// quantized exactly as the cache stores them, so cold and warm runs agree
// bit for bit.
inline std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts,
                                                EmbeddingProvider& provider, EmbeddingCache& cache,
                                                int batch_size = 32,
                                                std::vector<std::size_t>* empty_indices = nullptr) {
  if (texts.empty()) throw UsageError("embed_batch: empty text list");
  if (batch_size < 1) throw UsageError("embed_batch: batch_size must be >= 1");
  const std::string pid = provider.id();

  std::vector<std::optional<std::vector<double>>> found(texts.size());
  std::vector<std::string> pending;
  std::map<std::string, std::size_t, std::less<>> pending_index;
  std::size_t dim = provider.dimension();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (text::trim_view(texts[i]).empty()) {
      if (empty_indices != nullptr) empty_indices->push_back(i);
      continue;
    }
    found[i] = cache.get(pid, texts[i]);
    if (found[i]) {
      dim = dim == 0 ? found[i]->size() : dim;
    } else if (!pending_index.contains(texts[i])) {
      pending_index.emplace(texts[i], pending.size());
      pending.push_back(texts[i]);
    }
  }

  std::vector<std::vector<double>> fresh;
  for (std::size_t start = 0; start < pending.size(); start += static_cast<std::size_t>(batch_size)) {
    const auto end = std::min(pending.size(), start + static_cast<std::size_t>(batch_size));
    std::vector<std::string> chunk(pending.begin() + static_cast<std::ptrdiff_t>(start),
                                   pending.begin() + static_cast<std::ptrdiff_t>(end));
    auto raw = provider.embed_raw(chunk);
    if (raw.size() != chunk.size()) throw BackendError("provider returned wrong vector count");
    for (std::size_t j = 0; j < raw.size(); ++j) {
      auto& v = raw[j];
      if (v.empty()) throw BackendError("provider fault: empty vector");
      if (dim == 0) dim = v.size();
      if (v.size() != dim) {
        throw BackendError("provider fault: dimension mismatch (" + std::to_string(v.size()) +
                           " vs " + std::to_string(dim) + ")");
      }
      normalize(v);
      for (double& x : v) x = quantize(x);
      cache.put(pid, chunk[j], v);
      fresh.push_back(std::move(v));
    }
  }
  if (auto* http = dynamic_cast<HttpEmbeddingProvider*>(&provider); http != nullptr && dim > 0) {
    http->learn_dimension(dim);
  }
  cache.flush();

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (found[i]) {
      if (found[i]->size() != dim) throw DataError("embedding cache holds mixed dimensions for " + pid);
      out.push_back({std::move(*found[i]), pid});
    } else if (auto it = pending_index.find(texts[i]); it != pending_index.end()) {
      out.push_back({fresh[it->second], pid});
    } else {
      if (dim == 0) {
        throw UsageError("cannot embed empty text: embedding dimension unknown for " + pid);
      }
      std::vector<double> e0(dim, 0.0);
      e0[0] = 1.0;
      out.push_back({std::move(e0), pid});
    }
  }
  return out;
}

}  // namespace glossgauge::embedding

#endif  // GLOSSGAUGE_EMBEDDING_HPP_
