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

// Text primitives shared by the glossary and readability code: trimming,
// ASCII case folding, hashing, sentence splitting and word tokenization.
//
// Sentence rules (deterministic, ASCII-oriented):
//   * `.`, `!` and `?` terminate a sentence when followed by whitespace or
//     end of text. Closing quotes and brackets directly after the terminator
//     belong to the sentence.
//   * A period does not terminate when the token it ends is one of
//     `e.g.`, `i.e.`, `etc.`, `cf.`, `vs.` (case-insensitive).
//   * A period directly after a single capital letter (an initial such as
//     the `S.` in `U.S.`) does not terminate, unless that letter is the first
//     word of the current sentence.

#ifndef GLOSSGAUGE_TEXT_HPP_
#define GLOSSGAUGE_TEXT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace glossgauge::text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string trim(std::string_view s) { return std::string(trim_view(s)); }

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower(c);
  return out;
}

// Collapses internal whitespace runs to one space and trims the ends.
inline std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : trim_view(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

// Non-overlapping occurrence count; empty needle counts as zero.
inline std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

// FNV-1a, 64 bit, over raw bytes.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-module seed derivation from the run seed: splitmix64(seed ^ fnv1a64(label)).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return splitmix64(seed ^ fnv1a64(label));
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return out;
}

namespace detail {

// Length of a closing quote/bracket at `pos`, 0 if none. Handles the UTF-8
// right single and double quotation marks.
inline std::size_t closer_length(std::string_view s, std::size_t pos) {
  const char c = s[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (pos + 2 < s.size() && static_cast<unsigned char>(c) == 0xE2 &&
      static_cast<unsigned char>(s[pos + 1]) == 0x80) {
    const auto third = static_cast<unsigned char>(s[pos + 2]);
    if (third == 0x9D || third == 0x99) return 3;
  }
  return 0;
}

inline constexpr std::array<std::string_view, 5> kAbbreviations = {"e.g.", "i.e.", "etc.", "cf.",
                                                                   "vs."};

// `period` indexes a '.', `sentence_start` the first byte of the current sentence.
inline bool period_terminates(std::string_view s, std::size_t period, std::size_t sentence_start) {
  std::size_t tok = period;
  while (tok > sentence_start && !is_space(s[tok - 1])) --tok;
  // Ignore opening punctuation glued to the token, e.g. "(e.g."
  while (tok < period && (s[tok] == '(' || s[tok] == '[' || s[tok] == '"' || s[tok] == '\'')) {
    ++tok;
  }
  const std::string token = to_lower(s.substr(tok, period - tok + 1));
  for (auto abbr : kAbbreviations) {
    if (token == abbr) return false;
  }
  if (period == 0 || !is_upper(s[period - 1])) return true;
  const std::size_t letter = period - 1;
  if (letter > 0 && is_alpha(s[letter - 1])) return true;  // longer word, e.g. "CO."
  // Single capital letter. It is an initial unless it opens the sentence.
  std::size_t first = sentence_start;
  while (first < s.size() && is_space(s[first])) ++first;
  return letter == first;
}

}  // namespace detail

// Splits into trimmed sentences. Empty or all-whitespace text yields none.
inline std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    for (std::size_t len; end < s.size() && (len = detail::closer_length(s, end)) > 0;) end += len;
    const bool boundary = end == s.size() || is_space(s[end]);
    if (boundary && (c != '.' || detail::period_terminates(s, i, start))) {
      auto sentence = trim_view(s.substr(start, end - start));
      if (!sentence.empty()) out.emplace_back(sentence);
      start = end;
    }
    i = end;
  }
  auto tail = trim_view(s.substr(start));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

inline bool is_single_sentence(std::string_view s) { return split_sentences(s).size() == 1; }

// Words for readability: maximal runs of ASCII alphanumerics, with an
// apostrophe kept when it sits between two alphanumerics ("don't").
inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_alnum(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size()) {
      if (is_alnum(s[j])) {
        ++j;
      } else if (s[j] == '\'' && j + 1 < s.size() && is_alnum(s[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Tokens for hashing: lowercase, split on every non-alphanumeric byte.
inline std::vector<std::string> hash_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (is_alnum(c)) {
      cur += to_lower(c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace glossgauge::text

#endif  // GLOSSGAUGE_TEXT_HPP_
