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

// Per-term adherence and robustness over sentence embeddings, plus the
// aggregate statistics and rankings the reports are built from.
//
//   adherence(D, M_1..M_n)  = mean_k cos(D, M_k)
//   robustness(M_1..M_n)    = mean over the n(n-1)/2 unordered pairs p<q of cos(M_p, M_q)

#ifndef GLOSSGAUGE_METRICS_HPP_
#define GLOSSGAUGE_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glossgauge/embedding.hpp"
#include "glossgauge/error.hpp"

namespace glossgauge::metrics {

using embedding::EmbeddingVector;

inline double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline std::vector<double> completion_similarities(const EmbeddingVector& reference,
                                                   std::span<const EmbeddingVector> completions) {
  std::vector<double> out;
  out.reserve(completions.size());
  for (const auto& m : completions) out.push_back(embedding::cosine_similarity(reference, m));
  return out;
}

// Pairs in (p, q) order with p < q.
inline std::vector<double> pairwise_similarities(std::span<const EmbeddingVector> completions) {
  std::vector<double> out;
  const std::size_t n = completions.size();
  out.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      out.push_back(embedding::cosine_similarity(completions[p], completions[q]));
    }
  }
  return out;
}

inline double adherence(const EmbeddingVector& reference,
                        std::span<const EmbeddingVector> completions) {
  if (completions.empty()) throw UsageError("adherence: no completions");
  const auto sims = completion_similarities(reference, completions);
  return mean_of(sims);
}

inline double robustness(std::span<const EmbeddingVector> completions) {
  if (completions.size() < 2) throw UsageError("robustness: needs at least 2 completions");
  const auto sims = pairwise_similarities(completions);
  return mean_of(sims);
}

struct TemplateGroup {
  std::string template_id;
  std::vector<EmbeddingVector> vectors;
};

struct PerTemplateRobustness {
  std::map<std::string, double> values;
  std::vector<std::string> warnings;
};

// Groups smaller than two are skipped with a warning.
inline PerTemplateRobustness per_template_robustness(std::span<const TemplateGroup> groups) {
  PerTemplateRobustness out;
  for (const auto& g : groups) {
    if (g.vectors.size() < 2) {
      out.warnings.push_back("template " + g.template_id + ": " + std::to_string(g.vectors.size()) +
                             " completion(s), robustness omitted");
      continue;
    }
    out.values[g.template_id] = robustness(g.vectors);
  }
  return out;
}

struct TermScore {
  std::string term;
  double adherence = 0.0;
  double robustness = 0.0;  // all completions across templates; NaN when n < 2
  int n = 0;
  std::vector<double> per_completion_sims;
  std::vector<double> per_pair_sims;
  std::map<std::string, double> per_template_robustness;
  std::vector<std::string> warnings;
};

inline TermScore score_term(std::string term, const EmbeddingVector& reference,
                            std::span<const TemplateGroup> groups) {
  std::vector<EmbeddingVector> all;
  for (const auto& g : groups) all.insert(all.end(), g.vectors.begin(), g.vectors.end());
  if (all.empty()) throw DataError("term \"" + term + "\": no completions to score");

  TermScore s;
  s.term = std::move(term);
  s.n = static_cast<int>(all.size());
  s.per_completion_sims = completion_similarities(reference, all);
  s.adherence = mean_of(s.per_completion_sims);
  s.per_pair_sims = pairwise_similarities(all);
  s.robustness = s.per_pair_sims.empty() ? std::nan("") : mean_of(s.per_pair_sims);
  if (s.per_pair_sims.empty()) s.warnings.push_back("fewer than 2 completions, robustness undefined");
  auto per_template = per_template_robustness(groups);
  s.per_template_robustness = std::move(per_template.values);
  s.warnings.insert(s.warnings.end(), per_template.warnings.begin(), per_template.warnings.end());
  return s;
}

struct AggregateStats {
  double mean = 0.0;
  double std = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

inline AggregateStats aggregate(std::span<const double> values) {
  if (values.empty()) throw UsageError("aggregate: empty value list");
  AggregateStats a;
  a.count = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  a.min = *lo;
  a.max = *hi;
  // Rounding in the sum can push the mean a hair outside [min, max].
  a.mean = std::clamp(mean_of(values), a.min, a.max);
  double ss = 0.0;
  for (double x : values) ss += (x - a.mean) * (x - a.mean);
  a.std = std::sqrt(ss / static_cast<double>(values.size()));
  return a;
}

enum class RankKey { kAdherence, kRobustness };

inline std::string_view rank_key_name(RankKey k) {
  return k == RankKey::kAdherence ? "adherence" : "robustness";
}

struct RankedTerm {
  std::string term;
  double value = 0.0;
  bool operator==(const RankedTerm&) const = default;
};

struct Ranking {
  std::vector<RankedTerm> top;     // highest first
  std::vector<RankedTerm> bottom;  // lowest first
};

// Ties break on ascending term text in both lists. Terms whose key is NaN
// (robustness with n < 2) are left out.
inline Ranking rank_terms(std::span<const TermScore> scores, RankKey key, std::size_t k) {
  std::vector<RankedTerm> items;
  for (const auto& s : scores) {
    const double v = key == RankKey::kAdherence ? s.adherence : s.robustness;
    if (!std::isnan(v)) items.push_back({s.term, v});
  }
  if (k > items.size()) {
    throw UsageError("rank_terms: k = " + std::to_string(k) + " exceeds " +
                     std::to_string(items.size()) + " scored terms");
  }
  Ranking r;
  auto desc = items;
  std::sort(desc.begin(), desc.end(), [](const RankedTerm& a, const RankedTerm& b) {
    return a.value != b.value ? a.value > b.value : a.term < b.term;
  });
  auto asc = std::move(items);
  std::sort(asc.begin(), asc.end(), [](const RankedTerm& a, const RankedTerm& b) {
    return a.value != b.value ? a.value < b.value : a.term < b.term;
  });
  r.top.assign(desc.begin(), desc.begin() + static_cast<std::ptrdiff_t>(k));
  r.bottom.assign(asc.begin(), asc.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

}  // namespace glossgauge::metrics

#endif  // GLOSSGAUGE_METRICS_HPP_
