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

// Flesch-Kincaid grade and Gunning-Fog index, with a seeded bootstrap that
// builds >=100-word excerpts out of short single-sentence definitions.
//
// Counting rules:
//   * words: text::words() tokens (ASCII alphanumeric runs, internal
//     apostrophes kept). Hyphens split words, so each half is judged alone.
//   * syllables: lowercase, count maximal runs of a/e/i/o/u/y, subtract one
//     for a final "e" unless the word ends in consonant + "le"; at least 1.
//     Tokens without letters (numbers) count as one syllable.
//   * complex word: three or more syllables, no exclusions.
//   * sentences: text::split_sentences() pieces that contain a word.
//
// Bootstrap randomness: iteration i uses std::mt19937_64 seeded with
// splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15); each index is the first
// raw 64-bit output below the largest multiple of the corpus size, reduced
// modulo the corpus size.

#ifndef GLOSSGAUGE_READABILITY_HPP_
#define GLOSSGAUGE_READABILITY_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glossgauge/error.hpp"
#include "glossgauge/text.hpp"

namespace glossgauge::readability {

struct TextStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;
  std::size_t complex_words = 0;

  bool operator==(const TextStats&) const = default;
};

inline std::vector<std::string> split_sentences(std::string_view s) {
  return text::split_sentences(s);
}

namespace detail {
inline bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}
}  // namespace detail

inline int count_syllables(std::string_view word) {
  const std::string w = text::to_lower(word);
  bool has_alpha = false;
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    has_alpha = has_alpha || text::is_alpha(c);
    const bool v = detail::is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  if (!has_alpha) return 1;
  const std::size_t n = w.size();
  if (n > 0 && w[n - 1] == 'e') {
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && text::is_alpha(w[n - 3]) &&
                              !detail::is_vowel(w[n - 3]);
    if (!consonant_le) --groups;
  }
  return groups < 1 ? 1 : groups;
}

inline TextStats analyze(std::string_view s) {
  TextStats st;
  for (const auto& sentence : text::split_sentences(s)) {
    const auto ws = text::words(sentence);
    if (ws.empty()) continue;
    ++st.sentences;
    for (auto w : ws) {
      const int syl = count_syllables(w);
      ++st.words;
      st.syllables += static_cast<std::size_t>(syl);
      if (syl >= 3) ++st.complex_words;
    }
  }
  return st;
}

namespace detail {
inline void require_counts(const TextStats& st, const char* metric) {
  if (st.sentences == 0 || st.words == 0) {
    throw DataError(std::string(metric) + ": text has no words or no sentences");
  }
}
}  // namespace detail

inline double flesch_kincaid(const TextStats& st) {
  detail::require_counts(st, "flesch_kincaid");
  const double words = static_cast<double>(st.words);
  return 0.39 * (words / static_cast<double>(st.sentences)) +
         11.8 * (static_cast<double>(st.syllables) / words) - 15.59;
}

inline double gunning_fog(const TextStats& st) {
  detail::require_counts(st, "gunning_fog");
  const double words = static_cast<double>(st.words);
  return 0.4 * ((words / static_cast<double>(st.sentences)) +
                100.0 * (static_cast<double>(st.complex_words) / words));
}

enum class Metric { kFleschKincaid, kGunningFog, kWordCount };

inline std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kFleschKincaid: return "flesch_kincaid";
    case Metric::kGunningFog: return "gunning_fog";
    case Metric::kWordCount: return "word_count";
  }
  return "";
}

struct ReadabilityEstimate {
  Metric metric = Metric::kFleschKincaid;
  double mean = 0.0;
  double std = 0.0;  // population
  int iterations = 0;
  int sample_size = 0;
  std::uint64_t seed = 0;

  bool operator==(const ReadabilityEstimate&) const = default;
};

struct BootstrapConfig {
  int iterations = 1000;
  int sample_size = 50;
  std::uint64_t seed = 0;
  std::size_t min_words = 100;
  int max_redraws = 10;
};

struct BootstrapResult {
  ReadabilityEstimate flesch_kincaid;
  ReadabilityEstimate gunning_fog;
  // Per-definition word counts over the whole corpus (not resampled).
  ReadabilityEstimate word_count;
  // Iterations whose excerpt stayed under min_words after all redraws.
  int short_excerpts = 0;
  std::vector<std::string> warnings;

  std::vector<ReadabilityEstimate> estimates() const { return {flesch_kincaid, gunning_fog, word_count}; }
};

inline std::uint64_t iteration_seed(std::uint64_t seed, int iteration) {
  return text::splitmix64(seed + static_cast<std::uint64_t>(iteration + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform index in [0, n) by rejection on the raw engine output.
inline std::size_t draw_index(std::mt19937_64& eng, std::size_t n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

namespace detail {
inline std::pair<double, double> mean_std(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  double mean = s / static_cast<double>(xs.size());
  // One correction pass; a constant series then gets its exact value back.
  double r = 0.0;
  for (double x : xs) r += x - mean;
  mean += r / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}
}  // namespace detail

// Builds one excerpt for `iteration`: sample_size draws with replacement,
// joined by single spaces, redrawn while it has fewer than min_words words.
inline std::pair<std::string, TextStats> bootstrap_excerpt(std::span<const std::string> corpus,
                                                           const BootstrapConfig& cfg,
                                                           int iteration, bool* short_excerpt) {
  std::mt19937_64 eng(iteration_seed(cfg.seed, iteration));
  std::string excerpt;
  TextStats st;
  for (int attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
    excerpt.clear();
    for (int k = 0; k < cfg.sample_size; ++k) {
      if (k > 0) excerpt += ' ';
      excerpt += corpus[draw_index(eng, corpus.size())];
    }
    st = analyze(excerpt);
    if (st.words >= cfg.min_words) {
      if (short_excerpt != nullptr) *short_excerpt = false;
      return {excerpt, st};
    }
  }
  if (short_excerpt != nullptr) *short_excerpt = true;
  return {excerpt, st};
}

inline BootstrapResult bootstrap_readability(std::span<const std::string> corpus,
                                             const BootstrapConfig& cfg) {
  if (corpus.empty()) throw UsageError("bootstrap_readability: empty corpus");
  if (cfg.iterations < 1) throw UsageError("bootstrap_readability: iterations must be >= 1");
  if (cfg.sample_size < 1) throw UsageError("bootstrap_readability: sample_size must be >= 1");
  if (cfg.max_redraws < 0) throw UsageError("bootstrap_readability: max_redraws must be >= 0");

  BootstrapResult r;
  std::vector<double> fk, fog;
  fk.reserve(static_cast<std::size_t>(cfg.iterations));
  fog.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int it = 0; it < cfg.iterations; ++it) {
    bool is_short = false;
    const auto st = bootstrap_excerpt(corpus, cfg, it, &is_short).second;
    if (is_short) ++r.short_excerpts;
    fk.push_back(flesch_kincaid(st));
    fog.push_back(gunning_fog(st));
  }
  if (r.short_excerpts > 0) {
    r.warnings.push_back(std::to_string(r.short_excerpts) + " of " + std::to_string(cfg.iterations) +
                         " excerpts stayed under " + std::to_string(cfg.min_words) +
                         " words after " + std::to_string(cfg.max_redraws) + " redraws");
  }

  std::vector<double> wc;
  wc.reserve(corpus.size());
  for (const auto& t : corpus) wc.push_back(static_cast<double>(text::words(t).size()));

  const auto [fk_mean, fk_std] = detail::mean_std(fk);
  const auto [fog_mean, fog_std] = detail::mean_std(fog);
  const auto [wc_mean, wc_std] = detail::mean_std(wc);
  r.flesch_kincaid = {Metric::kFleschKincaid, fk_mean, fk_std, cfg.iterations, cfg.sample_size, cfg.seed};
  r.gunning_fog = {Metric::kGunningFog, fog_mean, fog_std, cfg.iterations, cfg.sample_size, cfg.seed};
  r.word_count = {Metric::kWordCount, wc_mean, wc_std, 1, static_cast<int>(corpus.size()), cfg.seed};
  return r;
}

}  // namespace glossgauge::readability

#endif  // GLOSSGAUGE_READABILITY_HPP_
