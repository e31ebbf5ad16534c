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

// glossgauge: adherence, robustness and readability of generated glossary
// definitions.
//
//   glossgauge run --glossary snapshot.jsonl --out-dir runs/demo
//   glossgauge ingest|generate|score|readability|report [flags]

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glossgauge/glossgauge.hpp"

namespace fs = std::filesystem;
namespace gg = glossgauge;

namespace {

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string glossary;
  std::string keep_list;
  std::string backend;
  std::string embedder;
  std::string out_dir;
  std::optional<int> top_k;
};

gg::RunConfig build_config(const GlobalFlags& f) {
  gg::RunConfig cfg = f.config.empty() ? gg::RunConfig{} : gg::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.glossary.empty()) cfg.glossary_path = f.glossary;
  if (!f.keep_list.empty()) cfg.keep_list = f.keep_list;
  if (!f.backend.empty()) cfg.generation.backend = gg::generation::parse_backend(f.backend);
  if (!f.embedder.empty()) cfg.embedding.kind = gg::embedding::parse_provider_kind(f.embedder);
  if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
  if (f.top_k) cfg.top_k = *f.top_k;
  gg::validate(cfg);
  return cfg;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void print_bundle(const gg::report::ReportBundle& b) {
  std::cout << gg::report::summary_text(b) << "\n" << gg::report::rankings_text(b);
  print_warnings(b.warnings);
}

// A compare target is a report.json or a run directory containing one.
nlohmann::json load_report_json(const fs::path& p) {
  fs::path file = p;
  if (fs::is_directory(p)) file = fs::exists(p / "report" / "report.json") ? p / "report" / "report.json" : p / "report.json";
  return nlohmann::json::parse(gg::io::read_file(file));
}

int dispatch(const std::string& command, const gg::RunConfig& cfg,
             const std::vector<std::string>& compare) {
  namespace pl = gg::pipeline;
  if (command == "ingest") {
    const auto g = pl::ingest(cfg);
    std::cout << g.size() << " terms from " << g.source_id << " -> "
              << pl::Paths{cfg.out_dir}.glossary().string() << "\n";
    print_warnings(nlohmann::json::parse(gg::io::read_file(pl::Paths{cfg.out_dir}.warnings("ingest")))
                       .get<std::vector<std::string>>());
  } else if (command == "generate") {
    const auto g = pl::load_or_ingest(cfg);
    auto backend = gg::generation::make_backend(pl::effective_generation(cfg));
    const auto sets = pl::generate(cfg, g, *backend);
    for (const auto& [arm, s] : sets) {
      std::cout << arm << ": " << s.size() << " terms, " << backend->calls() << " backend call(s)\n";
    }
  } else if (command == "score") {
    const auto g = pl::load_or_ingest(cfg);
    auto provider = gg::embedding::make_provider(cfg.embedding);
    for (const auto& [arm, scores] : pl::score(cfg, g, *provider)) {
      std::cout << arm << ": scored " << scores.size() << " terms\n";
    }
  } else if (command == "readability") {
    const auto g = pl::load_or_ingest(cfg);
    std::cout << pl::readability(cfg, g).dump(2) << "\n";
  } else if (command == "report") {
    const auto bundle = pl::build_report(cfg);
    print_bundle(bundle);
    if (!compare.empty()) {
      auto inputs = gg::report::ablation_inputs(bundle);
      for (const auto& c : compare) {
        auto more = gg::report::ablation_inputs_from_json(load_report_json(c));
        inputs.insert(inputs.end(), more.begin(), more.end());
      }
      const auto table = gg::report::compare_ablations(inputs);
      const auto dir = pl::Paths{cfg.out_dir}.report_dir();
      gg::io::atomic_write(dir / "comparison.txt", gg::report::comparison_text(table));
      gg::io::atomic_write(dir / "comparison.csv", gg::report::comparison_csv(table));
      std::cout << "\n" << gg::report::comparison_text(table);
    }
  } else if (command == "run") {
    print_bundle(pl::run_pipeline(cfg));
    std::cout << "\nartifacts in " << cfg.out_dir.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adherence, robustness and readability of generated glossary definitions"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", flags.seed, "Run seed (stub backends and bootstrap derive from it)");
  app.add_option("--glossary", flags.glossary, "Glossary snapshot (.jsonl or tab-separated)");
  app.add_option("--keep-list", flags.keep_list, "Terms to evaluate, one per line");
  app.add_option("--backend", flags.backend, "Chat backend")->check(CLI::IsMember({"http_chat", "stub"}));
  app.add_option("--embedder", flags.embedder, "Embedding provider")
      ->check(CLI::IsMember({"http", "hashed_stub"}));
  app.add_option("--out-dir", flags.out_dir, "Run directory");
  app.add_option("--top-k", flags.top_k, "Ranking depth")->check(CLI::NonNegativeNumber);

  std::vector<std::string> compare;
  app.add_subcommand("ingest", "Normalize a glossary snapshot into <out>/glossary.jsonl");
  app.add_subcommand("generate", "Fill the completion cache for every arm");
  app.add_subcommand("score", "Embed and compute adherence/robustness");
  app.add_subcommand("readability", "Bootstrap readability estimates");
  auto* report_cmd = app.add_subcommand("report", "Assemble the report bundle");
  report_cmd->add_option("--compare", compare, "Other runs (dir or report.json) to compare against");
  app.add_subcommand("run", "All stages end to end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(gg::ExitCode::kUsage);
  }

  try {
    const auto cfg = build_config(flags);
    return dispatch(app.get_subcommands().front()->get_name(), cfg, compare);
  } catch (const gg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed data: " << e.what() << "\n";
    return static_cast<int>(gg::ExitCode::kData);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(gg::ExitCode::kData);
  }
}
