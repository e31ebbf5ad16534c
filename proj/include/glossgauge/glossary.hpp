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

#ifndef GLOSSGAUGE_GLOSSARY_HPP_
#define GLOSSGAUGE_GLOSSARY_HPP_

#include <algorithm>
#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "glossgauge/error.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/text.hpp"

namespace glossgauge::glossary {

enum class CrossRefMode { kDefinition, kTermName };

inline CrossRefMode parse_crossref_mode(std::string_view s) {
  if (s == "definition") return CrossRefMode::kDefinition;
  if (s == "term_name") return CrossRefMode::kTermName;
  throw UsageError("crossref_mode must be 'definition' or 'term_name', got '" + std::string(s) + "'");
}

struct Entry {
  std::string term;
  std::string raw_definition;
  // Equal to raw_definition until normalize() runs.
  std::string normalized_definition;
  std::vector<std::string> cross_refs_resolved;

  bool operator==(const Entry&) const = default;
};

// Uniqueness key: lowercase, whitespace collapsed, and a trailing acronym in
// parentheses removed. An acronym is a single token with an uppercase letter,
// so "East Asian monsoon (EAsiaM)" keys as "east asian monsoon" while
// "Pathways (climate)" keeps its qualifier.
inline std::string term_key(std::string_view term) {
  std::string t = text::collapse_spaces(term);
  if (!t.empty() && t.back() == ')') {
    const auto open = t.rfind('(');
    if (open != std::string::npos && open > 0) {
      const std::string_view inner(t.data() + open + 1, t.size() - open - 2);
      const bool one_token =
          !inner.empty() && std::none_of(inner.begin(), inner.end(), text::is_space);
      const bool has_upper = std::any_of(inner.begin(), inner.end(), text::is_upper);
      if (one_token && has_upper) t = text::trim(std::string_view(t).substr(0, open));
    }
  }
  return text::to_lower(t);
}

struct Glossary {
  std::vector<Entry> entries;
  std::string source_id;

  const Entry* find(std::string_view term) const {
    const auto key = term_key(term);
    for (const auto& e : entries) {
      if (term_key(e.term) == key) return &e;
    }
    return nullptr;
  }
  std::size_t size() const { return entries.size(); }
  bool operator==(const Glossary&) const = default;
};

namespace detail {

inline void check_unique(const Glossary& g) {
  std::unordered_map<std::string, std::string> seen;
  for (const auto& e : g.entries) {
    if (auto [it, fresh] = seen.emplace(term_key(e.term), e.term); !fresh) {
      throw DataError("duplicate term \"" + e.term + "\" in " + g.source_id +
                      " (already defined as \"" + it->second + "\")");
    }
  }
}

inline Entry make_entry(std::string term, std::string definition, std::size_t index) {
  term = text::trim(term);
  if (term.empty()) throw DataError("record " + std::to_string(index) + ": empty field 'term'");
  if (text::trim_view(definition).empty()) {
    throw DataError("record " + std::to_string(index) + ": empty field 'definition'");
  }
  Entry e{std::move(term), std::move(definition), {}, {}};
  e.normalized_definition = e.raw_definition;
  return e;
}

}  // namespace detail

// Line-delimited records: {"term": ..., "definition": ...}. Record indices in
// errors are 1-based over non-blank lines.
inline Glossary parse_jsonl(std::string_view content, std::string source_id) {
  Glossary g{{}, std::move(source_id)};
  std::size_t index = 0;
  for (const auto& line : io::split_lines(content)) {
    if (text::trim_view(line).empty()) continue;
    ++index;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("record " + std::to_string(index) + ": not valid JSON (" + e.what() + ")");
    }
    if (!rec.is_object()) throw DataError("record " + std::to_string(index) + ": not an object");
    for (const char* field : {"term", "definition"}) {
      if (!rec.contains(field) || !rec[field].is_string()) {
        throw DataError("record " + std::to_string(index) + ": missing field '" + field + "'");
      }
    }
    g.entries.push_back(detail::make_entry(rec["term"].get<std::string>(),
                                           rec["definition"].get<std::string>(), index));
  }
  detail::check_unique(g);
  return g;
}

// Tab-separated with a header row naming the `term` and `definition` columns.
inline Glossary parse_tabular(std::string_view content, std::string source_id) {
  Glossary g{{}, std::move(source_id)};
  auto lines = io::split_lines(content);
  std::size_t row = 0;
  while (row < lines.size() && text::trim_view(lines[row]).empty()) ++row;
  if (row == lines.size()) return g;

  auto split_tabs = [](const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      cells.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return cells;
  };
  const auto header = split_tabs(lines[row]);
  std::optional<std::size_t> term_col, def_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = text::trim(header[c]);
    if (name == "term") term_col = c;
    if (name == "definition") def_col = c;
  }
  if (!term_col) throw DataError("tabular header: missing field 'term'");
  if (!def_col) throw DataError("tabular header: missing field 'definition'");

  std::size_t index = 0;
  for (++row; row < lines.size(); ++row) {
    if (text::trim_view(lines[row]).empty()) continue;
    ++index;
    const auto cells = split_tabs(lines[row]);
    if (*term_col >= cells.size()) {
      throw DataError("record " + std::to_string(index) + ": missing field 'term'");
    }
    if (*def_col >= cells.size()) {
      throw DataError("record " + std::to_string(index) + ": missing field 'definition'");
    }
    g.entries.push_back(detail::make_entry(cells[*term_col], cells[*def_col], index));
  }
  detail::check_unique(g);
  return g;
}

// Picks the format from the first non-blank character: '{' means line-delimited.
inline Glossary parse_glossary(std::string_view content, std::string source_id) {
  auto t = text::trim_view(content);
  if (!t.empty() && t.front() == '{') return parse_jsonl(content, std::move(source_id));
  return parse_tabular(content, std::move(source_id));
}

inline Glossary load_snapshot(const std::filesystem::path& path) {
  return parse_glossary(io::read_file(path), path.stem().string());
}

inline std::string first_sentence(std::string_view s) {
  if (text::trim_view(s).empty()) throw DataError("first_sentence: empty input");
  return text::split_sentences(s).front();
}

inline Glossary normalize(Glossary g) {
  for (auto& e : g.entries) e.normalized_definition = first_sentence(e.raw_definition);
  return g;
}

// The cited term if the whole definition is `See <Term>` or `See also <Term>`.
inline std::optional<std::string> cross_reference_target(std::string_view definition) {
  static const std::regex kPattern(R"(^\s*see(?:\s+also)?\s+(.+?)\.?\s*$)",
                                   std::regex::ECMAScript | std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(definition.begin(), definition.end(), m, kPattern)) return std::nullopt;
  auto target = text::trim(m[1].str());
  if (target.empty()) return std::nullopt;
  return target;
}

// Replaces every `See X` definition. In definition mode the chain is followed
// to the first real definition; in term_name mode the cited name is used, but
// the chain is still validated so cycles and dangling references surface.
inline Glossary resolve_cross_references(Glossary g, CrossRefMode mode = CrossRefMode::kDefinition) {
  const Glossary original = g;
  for (auto& entry : g.entries) {
    auto target = cross_reference_target(entry.normalized_definition);
    if (!target) continue;

    std::vector<std::string> chain{entry.term};
    std::unordered_set<std::string> visited{term_key(entry.term)};
    std::vector<std::string> cited;
    const Entry* current = original.find(entry.term);
    while (target) {
      const Entry* next = original.find(*target);
      if (next == nullptr) throw UnresolvedReferenceError(current->term, *target);
      chain.push_back(next->term);
      if (!visited.insert(term_key(next->term)).second) throw CycleError(chain);
      cited.push_back(next->term);
      current = next;
      target = cross_reference_target(current->normalized_definition);
    }
    entry.normalized_definition =
        mode == CrossRefMode::kDefinition ? current->normalized_definition : cited.front();
    entry.cross_refs_resolved.insert(entry.cross_refs_resolved.end(), cited.begin(), cited.end());
  }
  return g;
}

struct Subset {
  Glossary glossary;
  std::vector<std::string> missing;
};

// Keep-list order wins. Unknown names are reported, not fatal.
inline Subset select_subset(const Glossary& g, const std::vector<std::string>& keep) {
  Subset out{{{}, g.source_id}, {}};
  std::unordered_set<std::string> taken;
  for (const auto& name : keep) {
    const Entry* e = g.find(name);
    if (e == nullptr) {
      out.missing.push_back(name);
    } else if (taken.insert(term_key(e->term)).second) {
      out.glossary.entries.push_back(*e);
    }
  }
  return out;
}

// parse + normalize + resolve.
inline Glossary ingest(std::string_view content, std::string source_id,
                       CrossRefMode mode = CrossRefMode::kDefinition) {
  return resolve_cross_references(normalize(parse_glossary(content, std::move(source_id))), mode);
}

// Normalized glossary file: one record per entry with all four fields, plus a
// leading {"source_id": ...} header record.
inline std::string to_jsonl(const Glossary& g) {
  std::vector<nlohmann::json> records;
  records.push_back({{"source_id", g.source_id}});
  for (const auto& e : g.entries) {
    records.push_back({{"term", e.term},
                       {"raw_definition", e.raw_definition},
                       {"normalized_definition", e.normalized_definition},
                       {"cross_refs_resolved", e.cross_refs_resolved}});
  }
  return io::to_jsonl(records);
}

inline Glossary from_normalized_jsonl(std::string_view content) {
  Glossary g;
  std::size_t index = 0;
  for (const auto& line : io::split_lines(content)) {
    if (text::trim_view(line).empty()) continue;
    const auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw DataError("normalized glossary record " + std::to_string(index) + ": not an object");
    }
    if (index++ == 0 && rec.contains("source_id")) {
      g.source_id = rec["source_id"].get<std::string>();
      continue;
    }
    for (const char* field : {"term", "raw_definition", "normalized_definition"}) {
      if (!rec.contains(field) || !rec[field].is_string()) {
        throw DataError("normalized glossary record " + std::to_string(index) +
                        ": missing field '" + field + "'");
      }
    }
    g.entries.push_back({rec["term"].get<std::string>(), rec["raw_definition"].get<std::string>(),
                         rec["normalized_definition"].get<std::string>(),
                         rec.value("cross_refs_resolved", std::vector<std::string>{})});
  }
  detail::check_unique(g);
  return g;
}

// Accepts a raw snapshot or a file previously written by to_jsonl().
inline Glossary load_any(const std::filesystem::path& path,
                         CrossRefMode mode = CrossRefMode::kDefinition) {
  const auto content = io::read_file(path);
  const auto first = io::split_lines(content);
  if (!first.empty() && first.front().find("\"source_id\"") != std::string::npos) {
    return from_normalized_jsonl(content);
  }
  return ingest(content, path.stem().string(), mode);
}

}  // namespace glossgauge::glossary

#endif  // GLOSSGAUGE_GLOSSARY_HPP_
