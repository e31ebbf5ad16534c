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

// End-to-end orchestration. Every stage persists its output under the run
// directory so stages can be rerun individually and a failed run resumes
// from the caches:
//
//   <out>/manifest.json              config snapshot, ids, timestamps
//   <out>/glossary.jsonl             normalized glossary (ingest)
//   <out>/cache/completions.jsonl    completion cache (generate)
//   <out>/cache/embeddings.jsonl     embedding cache (score)
//   <out>/completions/<arm>.jsonl    one CompletionSet per term (generate)
//   <out>/scores/<arm>.jsonl         one TermScore per term (score)
//   <out>/readability.json           bootstrap estimates per corpus
//   <out>/warnings/ingest.json       keep-list names not found
//   <out>/report/...                 bundle files (report)
//   <out>/partial_index.json         written only when a stage fails
//
// Seeds: the stub chat backend uses derive_seed(seed, "generation"); the
// bootstrap for corpus c uses derive_seed(seed, "readability/" + c), where c
// is "definitions" or "arm/<arm id>".

#ifndef GLOSSGAUGE_PIPELINE_HPP_
#define GLOSSGAUGE_PIPELINE_HPP_

#include <atomic>
#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "glossgauge/config.hpp"
#include "glossgauge/embedding.hpp"
#include "glossgauge/error.hpp"
#include "glossgauge/generation.hpp"
#include "glossgauge/glossary.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/metrics.hpp"
#include "glossgauge/prompting.hpp"
#include "glossgauge/readability.hpp"
#include "glossgauge/report.hpp"

namespace glossgauge::pipeline {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Paths {
  fs::path out;

  fs::path manifest() const { return out / "manifest.json"; }
  fs::path glossary() const { return out / "glossary.jsonl"; }
  fs::path completions(const std::string& arm) const { return out / "completions" / (arm + ".jsonl"); }
  fs::path scores(const std::string& arm) const { return out / "scores" / (arm + ".jsonl"); }
  fs::path readability() const { return out / "readability.json"; }
  fs::path warnings(const std::string& stage) const { return out / "warnings" / (stage + ".json"); }
  fs::path report_dir() const { return out / "report"; }
  fs::path partial_index() const { return out / "partial_index.json"; }
};

// Optional injected backends; null members are built from the config.
struct Backends {
  generation::ChatBackend* chat = nullptr;
  embedding::EmbeddingProvider* embedder = nullptr;
};

inline generation::GenerationConfig effective_generation(const RunConfig& cfg) {
  auto g = cfg.generation;
  g.stub_seed = text::derive_seed(cfg.seed, "generation");
  return g;
}

inline std::string provider_id(const embedding::EmbeddingProviderConfig& e) {
  return e.kind == embedding::ProviderKind::kHashedStub ? embedding::hashed_stub_id(e.dimension, e.seed)
                                                        : "http/" + e.model;
}

// Summary label: the model name alone for a single arm, else model+arm.
inline std::string arm_label(const RunConfig& cfg, const ArmConfig& arm) {
  if (cfg.arms.size() == 1) return cfg.generation.model_name;
  return cfg.generation.model_name + "+" + arm.id;
}

inline prompting::Registry load_registry(const RunConfig& cfg) {
  prompting::Registry reg;
  if (!cfg.template_file.empty()) reg.load_file(cfg.template_file);
  return reg;
}

inline std::string run_id(const RunConfig& cfg) {
  return text::hex64(text::fnv1a64(to_json(cfg).dump()));
}

// Rewrites the manifest, keeping the first recorded start time.
inline void write_manifest(const RunConfig& cfg, const std::string& glossary_source,
                           const std::string& stage) {
  const Paths paths{cfg.out_dir};
  json m = json::object();
  if (fs::exists(paths.manifest())) {
    m = json::parse(io::read_file(paths.manifest()), nullptr, false);
    if (m.is_discarded() || !m.is_object()) m = json::object();
  }
  std::vector<std::string> template_ids;
  for (const auto& a : cfg.arms) {
    for (const auto& t : a.template_ids) {
      if (std::find(template_ids.begin(), template_ids.end(), t) == template_ids.end()) {
        template_ids.push_back(t);
      }
    }
  }
  const auto now = generation::detail::utc_timestamp();
  if (m.value("run_id", "") != run_id(cfg)) m = json::object();
  m["run_id"] = run_id(cfg);
  m["config"] = to_json(cfg);
  if (!glossary_source.empty()) m["glossary_source_id"] = glossary_source;
  m["template_ids"] = template_ids;
  m["model_name"] = cfg.generation.model_name;
  m["provider_id"] = provider_id(cfg.embedding);
  m["seed"] = cfg.seed;
  if (!m.contains("timestamps")) m["timestamps"] = json::object();
  if (!m["timestamps"].contains("started")) m["timestamps"]["started"] = now;
  m["timestamps"][stage] = now;
  io::atomic_write(paths.manifest(), m.dump(2) + "\n");
}

// ---- ingest ---------------------------------------------------------------

inline glossary::Glossary ingest(const RunConfig& cfg) {
  if (cfg.glossary_path.empty()) throw UsageError("no glossary given (--glossary or glossary.path)");
  auto g = glossary::load_any(cfg.glossary_path, cfg.crossref_mode);
  std::vector<std::string> warnings;
  if (!cfg.keep_list.empty()) {
    const auto keep = io::parse_keep_list(io::read_file(cfg.keep_list));
    if (keep.empty()) throw DataError("keep-list " + cfg.keep_list.string() + " names no terms");
    auto subset = glossary::select_subset(g, keep);
    for (const auto& m : subset.missing) warnings.push_back("keep-list term not in glossary: " + m);
    g = std::move(subset.glossary);
  }
  if (g.entries.empty()) throw DataError("glossary selection is empty");
  const Paths paths{cfg.out_dir};
  io::atomic_write(paths.glossary(), glossary::to_jsonl(g));
  io::atomic_write(paths.warnings("ingest"), json(warnings).dump(2) + "\n");
  write_manifest(cfg, g.source_id, "ingest");
  return g;
}

inline glossary::Glossary load_or_ingest(const RunConfig& cfg) {
  const Paths paths{cfg.out_dir};
  if (fs::exists(paths.glossary())) {
    return glossary::from_normalized_jsonl(io::read_file(paths.glossary()));
  }
  return ingest(cfg);
}

// ---- generate -------------------------------------------------------------

namespace detail {

inline std::vector<std::string> existing_artifacts(const fs::path& out) {
  std::vector<std::string> files;
  if (!fs::exists(out)) return files;
  for (const auto& e : fs::recursive_directory_iterator(out)) {
    if (e.is_regular_file() && e.path().filename() != "partial_index.json") {
      files.push_back(fs::relative(e.path(), out).generic_string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace detail

inline void write_partial_index(const RunConfig& cfg, const std::string& stage,
                                const std::string& error, const json& extra = json::object()) {
  const Paths paths{cfg.out_dir};
  json idx = {{"failed_stage", stage},
              {"error", error},
              {"artifacts", detail::existing_artifacts(cfg.out_dir)},
              {"resume", "rerun the same command; completed work is served from the caches"}};
  for (const auto& [k, v] : extra.items()) idx[k] = v;
  io::atomic_write(paths.partial_index(), idx.dump(2) + "\n");
}

// Completion sets per arm, in glossary order. Terms run on up to
// `parallelism` threads; results are placed by term index.
inline std::map<std::string, std::vector<generation::CompletionSet>> generate(
    const RunConfig& cfg, const glossary::Glossary& g, generation::ChatBackend& backend) {
  validate(cfg);
  const Paths paths{cfg.out_dir};
  const auto gen_cfg = effective_generation(cfg);
  const auto registry = load_registry(cfg);
  generation::CompletionCache cache(cfg.effective_cache_dir());

  std::map<std::string, std::vector<generation::CompletionSet>> out;
  for (const auto& arm : cfg.arms) {
    const auto templates = registry.select(arm.template_ids);
    const std::size_t n = g.entries.size();
    std::vector<std::optional<generation::CompletionSet>> results(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&] {
      while (!failed.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          results[i] = generation::generate_for_term(g.entries[i].term, templates, gen_cfg, cache, backend);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      }
    };
    {
      const auto threads = std::min<std::size_t>(static_cast<std::size_t>(gen_cfg.parallelism), n);
      std::vector<std::jthread> pool;
      for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
      worker();
    }
    cache.flush();

    if (error) {
      json done = json::array();
      for (std::size_t i = 0; i < n; ++i) {
        if (results[i]) done.push_back(g.entries[i].term);
      }
      std::string what = "unknown error";
      try {
        std::rethrow_exception(error);
      } catch (const std::exception& e) {
        what = e.what();
      }
      write_partial_index(cfg, "generate", what, {{"arm", arm.id}, {"completed_terms", done}});
      std::rethrow_exception(error);
    }

    std::vector<json> records;
    std::vector<generation::CompletionSet> sets;
    for (auto& r : results) {
      records.push_back(generation::to_json(*r));
      sets.push_back(std::move(*r));
    }
    io::atomic_write(paths.completions(arm.id), io::to_jsonl(records));
    out[arm.id] = std::move(sets);
  }
  write_manifest(cfg, g.source_id, "generate");
  return out;
}

inline std::vector<generation::CompletionSet> load_completions(const RunConfig& cfg,
                                                               const std::string& arm) {
  const Paths paths{cfg.out_dir};
  if (!fs::exists(paths.completions(arm))) {
    throw DataError("no completions for arm '" + arm + "' (run generate first)");
  }
  std::vector<generation::CompletionSet> sets;
  for (const auto& rec : io::read_jsonl(paths.completions(arm))) {
    sets.push_back(generation::completion_set_from_json(rec));
  }
  return sets;
}

// ---- score ----------------------------------------------------------------

inline std::map<std::string, std::vector<metrics::TermScore>> score(
    const RunConfig& cfg, const glossary::Glossary& g, embedding::EmbeddingProvider& provider) {
  validate(cfg);
  const Paths paths{cfg.out_dir};
  embedding::EmbeddingCache cache(cfg.effective_cache_dir());
  std::map<std::string, std::vector<metrics::TermScore>> out;

  for (const auto& arm : cfg.arms) {
    const auto sets = load_completions(cfg, arm.id);
    std::vector<std::string> texts;
    for (const auto& set : sets) {
      const auto* entry = g.find(set.term);
      if (entry == nullptr) throw DataError("completions mention unknown term \"" + set.term + "\"");
      texts.push_back(entry->normalized_definition);
    }
    for (const auto& set : sets) {
      for (const auto& c : set.completions) texts.push_back(c.text);
    }
    const auto vectors = embedding::embed_batch(texts, provider, cache, cfg.embedding.batch_size);

    std::vector<metrics::TermScore> scores;
    std::size_t cursor = sets.size();
    for (std::size_t t = 0; t < sets.size(); ++t) {
      std::vector<metrics::TemplateGroup> groups;
      for (const auto& c : sets[t].completions) {
        if (groups.empty() || groups.back().template_id != c.template_id) {
          groups.push_back({c.template_id, {}});
        }
        groups.back().vectors.push_back(vectors[cursor++]);
      }
      scores.push_back(metrics::score_term(sets[t].term, vectors[t], groups));
    }
    std::vector<json> records;
    for (const auto& s : scores) records.push_back(report::to_json(s));
    io::atomic_write(paths.scores(arm.id), io::to_jsonl(records));
    out[arm.id] = std::move(scores);
  }
  write_manifest(cfg, g.source_id, "score");
  return out;
}

inline std::vector<metrics::TermScore> load_scores(const RunConfig& cfg, const std::string& arm) {
  const Paths paths{cfg.out_dir};
  if (!fs::exists(paths.scores(arm))) {
    throw DataError("no scores for arm '" + arm + "' (run score first)");
  }
  std::vector<metrics::TermScore> scores;
  for (const auto& rec : io::read_jsonl(paths.scores(arm))) {
    scores.push_back(report::term_score_from_json(rec));
  }
  return scores;
}

// ---- readability ------------------------------------------------------------

inline json readability(const RunConfig& cfg, const glossary::Glossary& g) {
  validate(cfg);
  auto run_corpus = [&](const std::vector<std::string>& corpus, const std::string& label) {
    auto bc = cfg.readability;
    bc.seed = text::derive_seed(cfg.seed, "readability/" + label);
    return report::to_json(readability::bootstrap_readability(corpus, bc));
  };
  std::vector<std::string> definitions;
  for (const auto& e : g.entries) definitions.push_back(e.normalized_definition);
  json out = {{"definitions", run_corpus(definitions, "definitions")}, {"arms", json::object()}};
  for (const auto& arm : cfg.arms) {
    std::vector<std::string> corpus;
    for (const auto& set : load_completions(cfg, arm.id)) {
      for (const auto& c : set.completions) corpus.push_back(c.text);
    }
    out["arms"][arm.id] = run_corpus(corpus, "arm/" + arm.id);
  }
  io::atomic_write(Paths{cfg.out_dir}.readability(), out.dump(2) + "\n");
  write_manifest(cfg, g.source_id, "readability");
  return out;
}

// ---- report -----------------------------------------------------------------

// Assembled only from persisted artifacts, so a rerun over the same files is
// byte-identical.
inline report::ReportBundle build_report(const RunConfig& cfg) {
  validate(cfg);
  const Paths paths{cfg.out_dir};
  if (!fs::exists(paths.glossary())) throw DataError("no glossary in " + cfg.out_dir.string());
  const auto g = glossary::from_normalized_jsonl(io::read_file(paths.glossary()));
  if (!fs::exists(paths.readability())) throw DataError("no readability.json (run readability first)");
  const auto rj = json::parse(io::read_file(paths.readability()));

  std::vector<std::string> warnings;
  if (fs::exists(paths.warnings("ingest"))) {
    warnings = json::parse(io::read_file(paths.warnings("ingest"))).get<std::vector<std::string>>();
  }
  std::vector<report::ArmInput> arms;
  for (const auto& arm : cfg.arms) {
    std::size_t empty = 0;
    for (const auto& set : load_completions(cfg, arm.id)) {
      for (const auto& c : set.completions) empty += c.empty ? 1 : 0;
    }
    if (!rj.at("arms").contains(arm.id)) throw DataError("readability.json lacks arm '" + arm.id + "'");
    arms.push_back({arm.id, arm_label(cfg, arm), arm.template_ids, load_scores(cfg, arm.id),
                    report::bootstrap_from_json(rj["arms"][arm.id]), empty});
  }
  auto bundle = report::assemble_bundle(
      {g.source_id, cfg.generation.model_name, provider_id(cfg.embedding)}, std::move(arms),
      report::bootstrap_from_json(rj.at("definitions")), cfg.top_k, cfg.bin_width, cfg.report_as,
      std::move(warnings));
  report::write_bundle(bundle, paths.report_dir());
  write_manifest(cfg, g.source_id, "report");
  return bundle;
}

// ---- run --------------------------------------------------------------------

inline report::ReportBundle run_pipeline(const RunConfig& cfg, Backends backends = {}) {
  validate(cfg);
  std::unique_ptr<generation::ChatBackend> own_chat;
  std::unique_ptr<embedding::EmbeddingProvider> own_embedder;
  std::string stage = "ingest";
  const Paths paths{cfg.out_dir};
  if (fs::exists(paths.partial_index())) fs::remove(paths.partial_index());
  try {
    const auto g = ingest(cfg);
    stage = "generate";
    if (backends.chat == nullptr) {
      own_chat = generation::make_backend(effective_generation(cfg));
      backends.chat = own_chat.get();
    }
    generate(cfg, g, *backends.chat);
    stage = "score";
    if (backends.embedder == nullptr) {
      own_embedder = embedding::make_provider(cfg.embedding);
      backends.embedder = own_embedder.get();
    }
    score(cfg, g, *backends.embedder);
    stage = "readability";
    readability(cfg, g);
    stage = "report";
    return build_report(cfg);
  } catch (const std::exception& e) {
    // generate() writes a richer index itself when a term fails.
    if (stage != "ingest" && !fs::exists(paths.partial_index())) {
      write_partial_index(cfg, stage, e.what());
    }
    throw;
  }
}

}  // namespace glossgauge::pipeline

#endif  // GLOSSGAUGE_PIPELINE_HPP_
