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

#ifndef GLOSSGAUGE_REPORT_HPP_
#define GLOSSGAUGE_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glossgauge/config.hpp"
#include "glossgauge/error.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/metrics.hpp"
#include "glossgauge/readability.hpp"

namespace glossgauge::report {

namespace fs = std::filesystem;
using json = nlohmann::json;
using metrics::AggregateStats;
using readability::ReadabilityEstimate;

struct Histogram {
  double bin_width = 0.05;
  std::vector<double> edges;  // counts.size() + 1 edges over [0, 1]
  std::vector<std::size_t> counts;
  std::size_t clamped_low = 0;  // scores below 0, counted in the first bin

  std::size_t total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
};

// Fixed-width bins over [0, 1], closed on the left; 1.0 lands in the last
// bin. Negative scores are counted in the first bin and in clamped_low.
inline Histogram emit_histogram(std::span<const double> scores, double bin_width = 0.05) {
  if (!(bin_width > 0.0)) throw UsageError("emit_histogram: bin_width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  const auto bins = static_cast<std::size_t>(std::max(1.0, std::ceil(1.0 / bin_width - 1e-9)));
  h.counts.assign(bins, 0);
  for (std::size_t i = 0; i < bins; ++i) h.edges.push_back(static_cast<double>(i) * bin_width);
  h.edges.push_back(1.0);
  for (double s : scores) {
    if (std::isnan(s) || s < -1.0 || s > 1.0) {
      throw UsageError("emit_histogram: score outside [-1, 1]");
    }
    std::size_t idx;
    if (s < 0.0) {
      ++h.clamped_low;
      idx = 0;
    } else if (s >= 1.0) {
      idx = bins - 1;
    } else {
      // The tolerance keeps decimal edges such as 0.15 in the bin they open.
      idx = std::min(bins - 1, static_cast<std::size_t>(std::floor(s / bin_width + 1e-9)));
    }
    ++h.counts[idx];
  }
  return h;
}

struct SummaryRow {
  std::string label;
  // Empty for the official-definitions row.
  std::optional<AggregateStats> adherence;
  std::optional<AggregateStats> robustness;           // all completions per term
  std::optional<AggregateStats> template_robustness;  // per (term, template) group
  ReadabilityEstimate word_count;
  ReadabilityEstimate gunning_fog;
  ReadabilityEstimate flesch_kincaid;
};

struct ArmReport {
  std::string arm_id;
  std::string label;
  std::vector<std::string> template_ids;
  metrics::Ranking by_adherence;
  metrics::Ranking by_robustness;
  Histogram histogram;
  std::vector<metrics::TermScore> scores;
  std::size_t empty_completions = 0;
};

struct ReportBundle {
  std::string glossary_source;
  std::string model_name;
  std::string provider_id;
  ReportAs report_as = ReportAs::kSimilarity;
  std::vector<SummaryRow> summary;  // one per arm, then "Definitions"
  std::vector<ArmReport> arms;
  std::vector<std::string> warnings;
};

struct ArmInput {
  std::string arm_id;
  std::string label;
  std::vector<std::string> template_ids;
  std::vector<metrics::TermScore> scores;
  readability::BootstrapResult readability;
  std::size_t empty_completions = 0;
};

struct BundleMeta {
  std::string glossary_source;
  std::string model_name;
  std::string provider_id;
};

namespace detail {

inline AggregateStats as_distance(AggregateStats s) {
  return {1.0 - s.mean, s.std, 1.0 - s.max, 1.0 - s.min, s.count};
}

inline std::optional<AggregateStats> aggregate_finite(const std::vector<double>& xs) {
  std::vector<double> finite;
  std::copy_if(xs.begin(), xs.end(), std::back_inserter(finite),
               [](double x) { return !std::isnan(x); });
  if (finite.empty()) return std::nullopt;
  return metrics::aggregate(finite);
}

}  // namespace detail

// Builds the bundle from per-arm scores and readability. Rankings and the
// histogram always use similarity; report_as only changes displayed
// adherence/robustness statistics.
inline ReportBundle assemble_bundle(const BundleMeta& meta, std::vector<ArmInput> arms,
                                    const readability::BootstrapResult& definitions, int top_k,
                                    double bin_width, ReportAs report_as,
                                    std::vector<std::string> warnings = {}) {
  ReportBundle b{meta.glossary_source, meta.model_name, meta.provider_id, report_as, {}, {}, std::move(warnings)};
  for (auto& arm : arms) {
    if (arm.scores.empty()) throw DataError("arm '" + arm.arm_id + "' has no scored terms");
    std::vector<double> adh, rob, per_template;
    for (const auto& s : arm.scores) {
      adh.push_back(s.adherence);
      rob.push_back(s.robustness);
      for (const auto& [_, v] : s.per_template_robustness) per_template.push_back(v);
      for (const auto& w : s.warnings) b.warnings.push_back(arm.arm_id + ": " + s.term + ": " + w);
    }
    for (const auto& w : arm.readability.warnings) b.warnings.push_back(arm.arm_id + ": readability: " + w);
    if (arm.empty_completions > 0) {
      b.warnings.push_back(arm.arm_id + ": " + std::to_string(arm.empty_completions) +
                           " empty completion(s) embedded as e0");
    }

    SummaryRow row{arm.label, metrics::aggregate(adh), detail::aggregate_finite(rob),
                   detail::aggregate_finite(per_template), arm.readability.word_count,
                   arm.readability.gunning_fog, arm.readability.flesch_kincaid};
    if (report_as == ReportAs::kDistance) {
      row.adherence = detail::as_distance(*row.adherence);
      if (row.robustness) row.robustness = detail::as_distance(*row.robustness);
      if (row.template_robustness) row.template_robustness = detail::as_distance(*row.template_robustness);
    }
    b.summary.push_back(std::move(row));

    ArmReport ar;
    ar.arm_id = arm.arm_id;
    ar.label = arm.label;
    ar.template_ids = arm.template_ids;
    std::size_t k = static_cast<std::size_t>(std::max(top_k, 0));
    if (k > arm.scores.size()) {
      b.warnings.push_back(arm.arm_id + ": top_k " + std::to_string(k) + " clamped to " +
                           std::to_string(arm.scores.size()));
      k = arm.scores.size();
    }
    ar.by_adherence = metrics::rank_terms(arm.scores, metrics::RankKey::kAdherence, k);
    const auto robust_count = static_cast<std::size_t>(
        std::count_if(rob.begin(), rob.end(), [](double x) { return !std::isnan(x); }));
    ar.by_robustness =
        metrics::rank_terms(arm.scores, metrics::RankKey::kRobustness, std::min(k, robust_count));
    ar.histogram = emit_histogram(adh, bin_width);
    ar.scores = std::move(arm.scores);
    ar.empty_completions = arm.empty_completions;
    b.arms.push_back(std::move(ar));
  }
  for (const auto& w : definitions.warnings) b.warnings.push_back("definitions: readability: " + w);
  b.summary.push_back({"Definitions", std::nullopt, std::nullopt, std::nullopt, definitions.word_count,
                       definitions.gunning_fog, definitions.flesch_kincaid});
  return b;
}

// ---- serialization -------------------------------------------------------

inline json to_json(const AggregateStats& s) {
  return {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}, {"count", s.count}};
}

inline AggregateStats aggregate_from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("std").get<double>(), j.at("min").get<double>(),
          j.at("max").get<double>(), j.at("count").get<std::size_t>()};
}

inline json to_json(const ReadabilityEstimate& e) {
  return {{"metric", readability::metric_name(e.metric)},
          {"mean", e.mean},
          {"std", e.std},
          {"iterations", e.iterations},
          {"sample_size", e.sample_size},
          {"seed", e.seed}};
}

inline ReadabilityEstimate estimate_from_json(const json& j) {
  ReadabilityEstimate e;
  const auto name = j.at("metric").get<std::string>();
  for (auto m : {readability::Metric::kFleschKincaid, readability::Metric::kGunningFog,
                 readability::Metric::kWordCount}) {
    if (readability::metric_name(m) == name) e.metric = m;
  }
  e.mean = j.at("mean").get<double>();
  e.std = j.at("std").get<double>();
  e.iterations = j.at("iterations").get<int>();
  e.sample_size = j.at("sample_size").get<int>();
  e.seed = j.at("seed").get<std::uint64_t>();
  return e;
}

inline json to_json(const readability::BootstrapResult& r) {
  return {{"flesch_kincaid", to_json(r.flesch_kincaid)},
          {"gunning_fog", to_json(r.gunning_fog)},
          {"word_count", to_json(r.word_count)},
          {"short_excerpts", r.short_excerpts},
          {"warnings", r.warnings}};
}

inline readability::BootstrapResult bootstrap_from_json(const json& j) {
  readability::BootstrapResult r;
  r.flesch_kincaid = estimate_from_json(j.at("flesch_kincaid"));
  r.gunning_fog = estimate_from_json(j.at("gunning_fog"));
  r.word_count = estimate_from_json(j.at("word_count"));
  r.short_excerpts = j.value("short_excerpts", 0);
  r.warnings = j.value("warnings", std::vector<std::string>{});
  return r;
}

namespace detail {
// NaN is stored as null.
inline double number_or_nan(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}
}  // namespace detail

inline json to_json(const metrics::TermScore& s) {
  json per_template = json::object();
  for (const auto& [id, v] : s.per_template_robustness) per_template[id] = v;
  return {{"term", s.term},
          {"adherence", s.adherence},
          {"robustness", std::isnan(s.robustness) ? json(nullptr) : json(s.robustness)},
          {"n", s.n},
          {"per_completion_sims", s.per_completion_sims},
          {"per_pair_sims", s.per_pair_sims},
          {"per_template_robustness", per_template},
          {"warnings", s.warnings}};
}

inline metrics::TermScore term_score_from_json(const json& j) {
  metrics::TermScore s;
  s.term = j.at("term").get<std::string>();
  s.adherence = j.at("adherence").get<double>();
  s.robustness = detail::number_or_nan(j.at("robustness"));
  s.n = j.at("n").get<int>();
  s.per_completion_sims = j.at("per_completion_sims").get<std::vector<double>>();
  s.per_pair_sims = j.at("per_pair_sims").get<std::vector<double>>();
  for (const auto& [id, v] : j.at("per_template_robustness").items()) {
    s.per_template_robustness[id] = v.get<double>();
  }
  s.warnings = j.value("warnings", std::vector<std::string>{});
  return s;
}

inline json to_json(const SummaryRow& r) {
  auto opt = [](const std::optional<AggregateStats>& s) { return s ? to_json(*s) : json(nullptr); };
  return {{"label", r.label},
          {"adherence", opt(r.adherence)},
          {"robustness", opt(r.robustness)},
          {"template_robustness", opt(r.template_robustness)},
          {"word_count", to_json(r.word_count)},
          {"gunning_fog", to_json(r.gunning_fog)},
          {"flesch_kincaid", to_json(r.flesch_kincaid)}};
}

inline SummaryRow summary_row_from_json(const json& j) {
  auto opt = [](const json& v) -> std::optional<AggregateStats> {
    if (v.is_null()) return std::nullopt;
    return aggregate_from_json(v);
  };
  return {j.at("label").get<std::string>(), opt(j.at("adherence")), opt(j.at("robustness")),
          opt(j.at("template_robustness")), estimate_from_json(j.at("word_count")),
          estimate_from_json(j.at("gunning_fog")), estimate_from_json(j.at("flesch_kincaid"))};
}

inline json to_json(const Histogram& h) {
  return {{"bin_width", h.bin_width},
          {"edges", h.edges},
          {"counts", h.counts},
          {"clamped_low", h.clamped_low}};
}

inline json to_json(const metrics::Ranking& r) {
  auto list = [](const std::vector<metrics::RankedTerm>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back({{"term", x.term}, {"value", x.value}});
    return out;
  };
  return {{"top", list(r.top)}, {"bottom", list(r.bottom)}};
}

inline json to_json(const ReportBundle& b) {
  json summary = json::array();
  for (const auto& r : b.summary) summary.push_back(to_json(r));
  json arms = json::array();
  for (const auto& a : b.arms) {
    json scores = json::array();
    for (const auto& s : a.scores) scores.push_back(to_json(s));
    arms.push_back({{"arm_id", a.arm_id},
                    {"label", a.label},
                    {"templates", a.template_ids},
                    {"rank_adherence", to_json(a.by_adherence)},
                    {"rank_robustness", to_json(a.by_robustness)},
                    {"histogram", to_json(a.histogram)},
                    {"empty_completions", a.empty_completions},
                    {"scores", scores}});
  }
  return {{"glossary_source", b.glossary_source},
          {"model_name", b.model_name},
          {"provider_id", b.provider_id},
          {"report_as", b.report_as == ReportAs::kSimilarity ? "similarity" : "distance"},
          {"summary", summary},
          {"arms", arms},
          {"warnings", b.warnings}};
}

// ---- text and CSV ---------------------------------------------------------

namespace detail {

inline std::string fixed(double v, int precision) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

inline std::string pm(double mean, double std, int precision) {
  return fixed(mean, precision) + " ± " + fixed(std, precision);
}

// Display width in code points.
inline std::size_t width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

inline std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    widths.resize(std::max(widths.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], width(r[c]));
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(widths[c] - width(r[c]) + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

inline std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string summary_text(const ReportBundle& b) {
  std::vector<std::vector<std::string>> rows{{"Model", "Adherence", "Robustness",
                                              "Robustness/template", "Num Words", "Gunning Fog",
                                              "Flesch-Kincaid"}};
  auto stat = [](const std::optional<AggregateStats>& s) {
    return s ? detail::pm(s->mean, s->std, 2) : std::string("-");
  };
  for (const auto& r : b.summary) {
    rows.push_back({r.label, stat(r.adherence), stat(r.robustness), stat(r.template_robustness),
                    detail::pm(r.word_count.mean, r.word_count.std, 1),
                    detail::pm(r.gunning_fog.mean, r.gunning_fog.std, 1),
                    detail::pm(r.flesch_kincaid.mean, r.flesch_kincaid.std, 1)});
  }
  std::string out = "glossary: " + b.glossary_source + "  model: " + b.model_name +
                    "  embedder: " + b.provider_id +
                    (b.report_as == ReportAs::kDistance ? "  (scores as distance)" : "") + "\n\n";
  return out + detail::table(rows);
}

inline std::string summary_csv(const ReportBundle& b) {
  std::string out =
      "label,adherence_mean,adherence_std,adherence_min,adherence_max,robustness_mean,"
      "robustness_std,robustness_min,robustness_max,template_robustness_mean,"
      "template_robustness_std,word_count_mean,word_count_std,gunning_fog_mean,gunning_fog_std,"
      "flesch_kincaid_mean,flesch_kincaid_std\n";
  auto stat4 = [](const std::optional<AggregateStats>& s) {
    if (!s) return std::string(",,,");
    return detail::fixed(s->mean, 6) + "," + detail::fixed(s->std, 6) + "," +
           detail::fixed(s->min, 6) + "," + detail::fixed(s->max, 6);
  };
  for (const auto& r : b.summary) {
    out += detail::csv_cell(r.label) + "," + stat4(r.adherence) + "," + stat4(r.robustness) + ",";
    out += r.template_robustness ? detail::fixed(r.template_robustness->mean, 6) + "," +
                                       detail::fixed(r.template_robustness->std, 6)
                                 : std::string(",");
    for (const auto* e : {&r.word_count, &r.gunning_fog, &r.flesch_kincaid}) {
      out += "," + detail::fixed(e->mean, 6) + "," + detail::fixed(e->std, 6);
    }
    out += "\n";
  }
  return out;
}

inline std::string rankings_text(const ReportBundle& b) {
  std::string out;
  for (const auto& a : b.arms) {
    auto list = [&](const char* title, const std::vector<metrics::RankedTerm>& xs) {
      out += "  " + std::string(title) + "\n";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += "    " + std::to_string(i + 1) + ". " + xs[i].term + " (" +
               detail::fixed(xs[i].value, 4) + ")\n";
      }
    };
    out += a.label + "\n";
    list("Highest adherence", a.by_adherence.top);
    list("Lowest adherence", a.by_adherence.bottom);
    list("Lowest robustness", a.by_robustness.bottom);
    out += "\n";
  }
  return out;
}

inline std::string scores_csv(const ArmReport& a, ReportAs report_as) {
  auto shown = [&](double v) { return report_as == ReportAs::kDistance ? 1.0 - v : v; };
  std::vector<std::string> template_ids;
  for (const auto& s : a.scores) {
    for (const auto& [id, _] : s.per_template_robustness) {
      if (std::find(template_ids.begin(), template_ids.end(), id) == template_ids.end()) {
        template_ids.push_back(id);
      }
    }
  }
  std::string out = "term,n,adherence,robustness";
  for (const auto& id : template_ids) out += ",robustness_" + id;
  out += "\n";
  for (const auto& s : a.scores) {
    out += detail::csv_cell(s.term) + "," + std::to_string(s.n) + "," +
           detail::fixed(shown(s.adherence), 6) + "," + detail::fixed(shown(s.robustness), 6);
    for (const auto& id : template_ids) {
      auto it = s.per_template_robustness.find(id);
      out += "," + (it == s.per_template_robustness.end() ? std::string()
                                                          : detail::fixed(shown(it->second), 6));
    }
    out += "\n";
  }
  return out;
}

// (bin_start, bin_end, count) rows for external plotting.
inline std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_start,bin_end,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += detail::fixed(h.edges[i], 4) + "," + detail::fixed(h.edges[i + 1], 4) + "," +
           std::to_string(h.counts[i]) + "\n";
  }
  return out;
}

// ---- ablation comparison ---------------------------------------------------

struct AblationInput {
  std::string glossary_source;
  std::string provider_id;
  SummaryRow row;
};

struct ComparisonRow {
  std::string ablation_id;
  std::optional<AggregateStats> adherence;
  ReadabilityEstimate word_count;
  ReadabilityEstimate gunning_fog;
  ReadabilityEstimate flesch_kincaid;
};

struct ComparisonTable {
  std::string glossary_source;
  std::string provider_id;
  std::vector<ComparisonRow> rows;
};

// Rows keep input order. Every input must share glossary and embedder.
inline ComparisonTable compare_ablations(
    const std::vector<std::pair<std::string, AblationInput>>& inputs) {
  if (inputs.empty()) throw UsageError("compare_ablations: nothing to compare");
  ComparisonTable t{inputs.front().second.glossary_source, inputs.front().second.provider_id, {}};
  for (const auto& [id, in] : inputs) {
    if (in.glossary_source != t.glossary_source) {
      throw DataError("compare_ablations: '" + id + "' uses glossary '" + in.glossary_source +
                      "', expected '" + t.glossary_source + "'");
    }
    if (in.provider_id != t.provider_id) {
      throw DataError("compare_ablations: '" + id + "' uses embedder '" + in.provider_id +
                      "', expected '" + t.provider_id + "'");
    }
    for (const auto& r : t.rows) {
      if (r.ablation_id == id) throw DataError("compare_ablations: duplicate id '" + id + "'");
    }
    t.rows.push_back({id, in.row.adherence, in.row.word_count, in.row.gunning_fog,
                      in.row.flesch_kincaid});
  }
  return t;
}

inline std::string comparison_text(const ComparisonTable& t) {
  std::vector<std::vector<std::string>> rows{
      {"Ablation", "Adherence", "Num Words", "Gunning Fog", "Flesch-Kincaid"}};
  for (const auto& r : t.rows) {
    rows.push_back({r.ablation_id,
                    r.adherence ? detail::pm(r.adherence->mean, r.adherence->std, 2) : "-",
                    detail::pm(r.word_count.mean, r.word_count.std, 1),
                    detail::pm(r.gunning_fog.mean, r.gunning_fog.std, 1),
                    detail::pm(r.flesch_kincaid.mean, r.flesch_kincaid.std, 1)});
  }
  return detail::table(rows);
}

inline std::string comparison_csv(const ComparisonTable& t) {
  std::string out =
      "ablation,adherence_mean,adherence_std,word_count_mean,word_count_std,gunning_fog_mean,"
      "gunning_fog_std,flesch_kincaid_mean,flesch_kincaid_std\n";
  for (const auto& r : t.rows) {
    out += detail::csv_cell(r.ablation_id) + ",";
    out += r.adherence ? detail::fixed(r.adherence->mean, 6) + "," + detail::fixed(r.adherence->std, 6)
                       : std::string(",");
    for (const auto* e : {&r.word_count, &r.gunning_fog, &r.flesch_kincaid}) {
      out += "," + detail::fixed(e->mean, 6) + "," + detail::fixed(e->std, 6);
    }
    out += "\n";
  }
  return out;
}

// Inputs for compare_ablations from a bundle: one per arm row.
inline std::vector<std::pair<std::string, AblationInput>> ablation_inputs(const ReportBundle& b) {
  std::vector<std::pair<std::string, AblationInput>> out;
  for (const auto& r : b.summary) {
    if (!r.adherence) continue;
    out.emplace_back(r.label, AblationInput{b.glossary_source, b.provider_id, r});
  }
  return out;
}

inline std::vector<std::pair<std::string, AblationInput>> ablation_inputs_from_json(const json& j) {
  std::vector<std::pair<std::string, AblationInput>> out;
  const auto source = j.at("glossary_source").get<std::string>();
  const auto provider = j.at("provider_id").get<std::string>();
  for (const auto& r : j.at("summary")) {
    auto row = summary_row_from_json(r);
    if (!row.adherence) continue;
    auto label = row.label;
    out.emplace_back(std::move(label), AblationInput{source, provider, std::move(row)});
  }
  return out;
}

// Files written under `dir`. Nothing here depends on wall-clock time.
inline std::vector<fs::path> write_bundle(const ReportBundle& b, const fs::path& dir) {
  std::vector<fs::path> written;
  auto put = [&](const fs::path& name, const std::string& content) {
    io::atomic_write(dir / name, content);
    written.push_back(dir / name);
  };
  put("report.json", to_json(b).dump(2) + "\n");
  put("summary.txt", summary_text(b));
  put("summary.csv", summary_csv(b));
  put("rankings.txt", rankings_text(b));
  for (const auto& a : b.arms) {
    put("scores_" + a.arm_id + ".csv", scores_csv(a, b.report_as));
    put("histogram_" + a.arm_id + ".csv", histogram_csv(a.histogram));
  }
  if (b.arms.size() > 1) {
    const auto table = compare_ablations(ablation_inputs(b));
    put("ablation.txt", comparison_text(table));
    put("ablation.csv", comparison_csv(table));
  }
  return written;
}

}  // namespace glossgauge::report

#endif  // GLOSSGAUGE_REPORT_HPP_
