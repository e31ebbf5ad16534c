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

// Run configuration. The config file is JSON with one object per module:
//
//   {
//     "seed": 42,
//     "out_dir": "runs/demo",            // relative paths resolve against the config file
//     "cache_dir": "",                   // default <out_dir>/cache
//     "glossary":   {"path": "...", "keep_list": "...", "crossref_mode": "definition"},
//     "prompting":  {"template_file": "", "arms": [{"id": "base", "templates": ["base1", ...]}]},
//     "generation": {"backend": "stub", "endpoint": "", "model_name": "stub",
//                    "samples_per_template": 5, "temperature": null, "max_retries": 3,
//                    "request_timeout_ms": 60000, "retry_base_delay_ms": 500,
//                    "rate_limit": 0, "parallelism": 4},
//     "embedding":  {"kind": "hashed_stub", "endpoint": "", "model": "", "dimension": 256,
//                    "seed": 0, "batch_size": 32, "max_retries": 3,
//                    "request_timeout_ms": 60000, "retry_base_delay_ms": 500, "rate_limit": 0},
//     "readability": {"iterations": 1000, "sample_size": 50, "min_words": 100, "max_redraws": 10},
//     "report":     {"top_k": 3, "bin_width": 0.05, "report_as": "similarity"}
//   }
//
// Unknown keys are rejected. Seeds for the stub chat backend and for every
// bootstrap corpus are derived from "seed" (see derive_seed()).

#ifndef GLOSSGAUGE_CONFIG_HPP_
#define GLOSSGAUGE_CONFIG_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glossgauge/embedding.hpp"
#include "glossgauge/error.hpp"
#include "glossgauge/generation.hpp"
#include "glossgauge/glossary.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/readability.hpp"

namespace glossgauge {

namespace fs = std::filesystem;
using json = nlohmann::json;

// A named template set evaluated as one summary row.
struct ArmConfig {
  std::string id;
  std::vector<std::string> template_ids;
  bool operator==(const ArmConfig&) const = default;
};

enum class ReportAs { kSimilarity, kDistance };

struct RunConfig {
  std::uint64_t seed = 42;
  fs::path out_dir = "glossgauge-out";
  fs::path cache_dir;  // empty: <out_dir>/cache

  fs::path glossary_path;
  fs::path keep_list;
  glossary::CrossRefMode crossref_mode = glossary::CrossRefMode::kDefinition;

  fs::path template_file;
  std::vector<ArmConfig> arms = {{"base", {"base1", "base2", "base3", "base4", "base5"}}};

  generation::GenerationConfig generation;
  embedding::EmbeddingProviderConfig embedding;
  readability::BootstrapConfig readability;

  int top_k = 3;
  double bin_width = 0.05;
  ReportAs report_as = ReportAs::kSimilarity;

  fs::path effective_cache_dir() const { return cache_dir.empty() ? out_dir / "cache" : cache_dir; }
};

namespace config_detail {

inline void reject_unknown(const json& obj, std::string_view section,
                           std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) throw UsageError("config: '" + std::string(section) + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || k == key;
    if (!ok) throw UsageError("config: unknown key '" + key + "' in '" + std::string(section) + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key) || obj[key].is_null()) return;
  try {
    out = obj[key].get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config: key '") + key + "' has the wrong type");
  }
}

inline void read_path(const json& obj, const char* key, fs::path& out, const fs::path& base) {
  if (!obj.contains(key) || obj[key].is_null()) return;
  std::string s;
  read(obj, key, s);
  out = s.empty() ? fs::path() : (fs::path(s).is_relative() ? base / s : fs::path(s));
}

inline void read_ms(const json& obj, const char* key, std::chrono::milliseconds& out) {
  long long ms = out.count();
  read(obj, key, ms);
  if (ms < 0) throw UsageError(std::string("config: '") + key + "' must be >= 0");
  out = std::chrono::milliseconds(ms);
}

}  // namespace config_detail

// Overlays `j` on `cfg`. Relative paths resolve against `base`.
inline void apply_config(RunConfig& cfg, const json& j, const fs::path& base = {}) {
  using namespace config_detail;
  reject_unknown(j, "<root>",
                 {"seed", "out_dir", "cache_dir", "glossary", "prompting", "generation", "embedding",
                  "readability", "report"});
  read(j, "seed", cfg.seed);
  read_path(j, "out_dir", cfg.out_dir, base);
  read_path(j, "cache_dir", cfg.cache_dir, base);

  if (j.contains("glossary")) {
    const auto& g = j["glossary"];
    reject_unknown(g, "glossary", {"path", "keep_list", "crossref_mode"});
    read_path(g, "path", cfg.glossary_path, base);
    read_path(g, "keep_list", cfg.keep_list, base);
    if (g.contains("crossref_mode")) {
      cfg.crossref_mode = glossary::parse_crossref_mode(g["crossref_mode"].get<std::string>());
    }
  }
  if (j.contains("prompting")) {
    const auto& p = j["prompting"];
    reject_unknown(p, "prompting", {"template_file", "arms"});
    read_path(p, "template_file", cfg.template_file, base);
    if (p.contains("arms")) {
      cfg.arms.clear();
      for (const auto& a : p["arms"]) {
        reject_unknown(a, "prompting.arms[]", {"id", "templates"});
        ArmConfig arm;
        read(a, "id", arm.id);
        read(a, "templates", arm.template_ids);
        cfg.arms.push_back(std::move(arm));
      }
    }
  }
  if (j.contains("generation")) {
    const auto& g = j["generation"];
    reject_unknown(g, "generation",
                   {"backend", "endpoint", "model_name", "samples_per_template", "temperature",
                    "max_retries", "request_timeout_ms", "retry_base_delay_ms", "rate_limit",
                    "parallelism"});
    auto& gen = cfg.generation;
    if (g.contains("backend")) gen.backend = generation::parse_backend(g["backend"].get<std::string>());
    read(g, "endpoint", gen.endpoint);
    read(g, "model_name", gen.model_name);
    read(g, "samples_per_template", gen.samples_per_template);
    if (g.contains("temperature")) {
      if (g["temperature"].is_null()) {
        gen.temperature.reset();
      } else {
        double t = 0.0;
        read(g, "temperature", t);
        gen.temperature = t;
      }
    }
    read(g, "max_retries", gen.max_retries);
    read_ms(g, "request_timeout_ms", gen.request_timeout);
    read_ms(g, "retry_base_delay_ms", gen.retry_base_delay);
    read(g, "rate_limit", gen.rate_limit);
    read(g, "parallelism", gen.parallelism);
  }
  if (j.contains("embedding")) {
    const auto& e = j["embedding"];
    reject_unknown(e, "embedding",
                   {"kind", "endpoint", "model", "dimension", "seed", "batch_size", "max_retries",
                    "request_timeout_ms", "retry_base_delay_ms", "rate_limit"});
    auto& emb = cfg.embedding;
    if (e.contains("kind")) emb.kind = embedding::parse_provider_kind(e["kind"].get<std::string>());
    read(e, "endpoint", emb.endpoint);
    read(e, "model", emb.model);
    read(e, "dimension", emb.dimension);
    read(e, "seed", emb.seed);
    read(e, "batch_size", emb.batch_size);
    read(e, "max_retries", emb.max_retries);
    read_ms(e, "request_timeout_ms", emb.request_timeout);
    read_ms(e, "retry_base_delay_ms", emb.retry_base_delay);
    read(e, "rate_limit", emb.rate_limit);
  }
  if (j.contains("readability")) {
    const auto& r = j["readability"];
    reject_unknown(r, "readability", {"iterations", "sample_size", "min_words", "max_redraws"});
    read(r, "iterations", cfg.readability.iterations);
    read(r, "sample_size", cfg.readability.sample_size);
    read(r, "min_words", cfg.readability.min_words);
    read(r, "max_redraws", cfg.readability.max_redraws);
  }
  if (j.contains("report")) {
    const auto& r = j["report"];
    reject_unknown(r, "report", {"top_k", "bin_width", "report_as"});
    read(r, "top_k", cfg.top_k);
    read(r, "bin_width", cfg.bin_width);
    if (r.contains("report_as")) {
      const auto v = r["report_as"].get<std::string>();
      if (v == "similarity") {
        cfg.report_as = ReportAs::kSimilarity;
      } else if (v == "distance") {
        cfg.report_as = ReportAs::kDistance;
      } else {
        throw UsageError("config: report_as must be 'similarity' or 'distance'");
      }
    }
  }
}

inline RunConfig load_config(const fs::path& path) {
  RunConfig cfg;
  const auto parsed = json::parse(io::read_file(path), nullptr, false);
  if (parsed.is_discarded()) throw UsageError("config " + path.string() + " is not valid JSON");
  apply_config(cfg, parsed, path.parent_path());
  return cfg;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.arms.empty()) throw UsageError("config: at least one arm is required");
  for (const auto& a : cfg.arms) {
    if (a.id.empty() || a.template_ids.empty()) {
      throw UsageError("config: every arm needs an id and at least one template");
    }
    for (const auto& b : cfg.arms) {
      if (&a != &b && a.id == b.id) throw UsageError("config: duplicate arm id '" + a.id + "'");
    }
    if (a.id.find_first_of("/\\ ") != std::string::npos) {
      throw UsageError("config: arm id '" + a.id + "' must not contain spaces or slashes");
    }
  }
  generation::validate(cfg.generation);
  if (cfg.embedding.batch_size < 1) throw UsageError("config: embedding batch_size must be >= 1");
  if (cfg.top_k < 0) throw UsageError("config: top_k must be >= 0");
  if (!(cfg.bin_width > 0.0)) throw UsageError("config: bin_width must be positive");
  if (cfg.readability.iterations < 1 || cfg.readability.sample_size < 1) {
    throw UsageError("config: readability iterations and sample_size must be >= 1");
  }
}

// Snapshot for the run manifest; mirrors the file format.
inline json to_json(const RunConfig& cfg) {
  json arms = json::array();
  for (const auto& a : cfg.arms) arms.push_back({{"id", a.id}, {"templates", a.template_ids}});
  const auto& g = cfg.generation;
  const auto& e = cfg.embedding;
  return {
      {"seed", cfg.seed},
      {"out_dir", cfg.out_dir.string()},
      {"cache_dir", cfg.effective_cache_dir().string()},
      {"glossary",
       {{"path", cfg.glossary_path.string()},
        {"keep_list", cfg.keep_list.string()},
        {"crossref_mode",
         cfg.crossref_mode == glossary::CrossRefMode::kDefinition ? "definition" : "term_name"}}},
      {"prompting", {{"template_file", cfg.template_file.string()}, {"arms", arms}}},
      {"generation",
       {{"backend", generation::backend_name(g.backend)},
        {"endpoint", g.endpoint},
        {"model_name", g.model_name},
        {"samples_per_template", g.samples_per_template},
        {"temperature", g.temperature ? json(*g.temperature) : json(nullptr)},
        {"max_retries", g.max_retries},
        {"request_timeout_ms", g.request_timeout.count()},
        {"retry_base_delay_ms", g.retry_base_delay.count()},
        {"rate_limit", g.rate_limit},
        {"parallelism", g.parallelism}}},
      {"embedding",
       {{"kind", e.kind == embedding::ProviderKind::kHttp ? "http" : "hashed_stub"},
        {"endpoint", e.endpoint},
        {"model", e.model},
        {"dimension", e.dimension},
        {"seed", e.seed},
        {"batch_size", e.batch_size},
        {"max_retries", e.max_retries},
        {"request_timeout_ms", e.request_timeout.count()},
        {"retry_base_delay_ms", e.retry_base_delay.count()},
        {"rate_limit", e.rate_limit}}},
      {"readability",
       {{"iterations", cfg.readability.iterations},
        {"sample_size", cfg.readability.sample_size},
        {"min_words", cfg.readability.min_words},
        {"max_redraws", cfg.readability.max_redraws}}},
      {"report",
       {{"top_k", cfg.top_k},
        {"bin_width", cfg.bin_width},
        {"report_as", cfg.report_as == ReportAs::kSimilarity ? "similarity" : "distance"}}},
  };
}

}  // namespace glossgauge

#endif  // GLOSSGAUGE_CONFIG_HPP_
