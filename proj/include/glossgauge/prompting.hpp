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

#ifndef GLOSSGAUGE_PROMPTING_HPP_
#define GLOSSGAUGE_PROMPTING_HPP_

#include <algorithm>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "glossgauge/error.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/text.hpp"

namespace glossgauge::prompting {

inline constexpr std::string_view kPlaceholder = "[TERM]";

enum class Family { kBase, kIpcc, kReadable, kIpccReadable, kCustom };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::kBase: return "base";
    case Family::kIpcc: return "ipcc";
    case Family::kReadable: return "readable";
    case Family::kIpccReadable: return "ipcc_readable";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

inline Family parse_family(std::string_view s) {
  for (auto f : {Family::kBase, Family::kIpcc, Family::kReadable, Family::kIpccReadable,
                 Family::kCustom}) {
    if (family_name(f) == s) return f;
  }
  throw DataError("unknown template family '" + std::string(s) + "'");
}

struct PromptTemplate {
  std::string id;
  Family family = Family::kCustom;
  std::string pattern;

  bool operator==(const PromptTemplate&) const = default;
};

inline std::vector<PromptTemplate> builtin_templates() {
  static constexpr std::string_view kIpcc =
      " Adhere to the official Intergovernmental Panel on Climate Change (IPCC) glossary "
      "without citing it.";
  static constexpr std::string_view kReadable =
      " You must also make the definition understandable by a 10-year old.";
  const std::string define = "Define \"[TERM]\" in one sentence.";
  return {
      {"base1", Family::kBase, define},
      {"base2", Family::kBase, "How would you define \"[TERM]\" in a single sentence?"},
      {"base3", Family::kBase, "Can you describe \"[TERM]\" in just one sentence?"},
      {"base4", Family::kBase, "What is your one-sentence definition of \"[TERM]\"?"},
      {"base5", Family::kBase, "In one sentence, what does \"[TERM]\" mean to you?"},
      {"ipcc", Family::kIpcc, define + std::string(kIpcc)},
      {"readable", Family::kReadable, define + std::string(kReadable)},
      {"ipcc_readable", Family::kIpccReadable, define + std::string(kIpcc) + std::string(kReadable)},
  };
}

inline void validate(const PromptTemplate& t) {
  if (t.id.empty()) throw DataError("template with empty id");
  if (text::count_occurrences(t.pattern, kPlaceholder) != 1) {
    throw DataError("template '" + t.id + "' must contain " + std::string(kPlaceholder) +
                    " exactly once");
  }
}

inline std::string render(const PromptTemplate& t, std::string_view term) {
  if (term.empty()) throw UsageError("render: empty term for template '" + t.id + "'");
  const auto pos = t.pattern.find(kPlaceholder);
  if (pos == std::string::npos) throw DataError("template '" + t.id + "' has no placeholder");
  std::string out = t.pattern;
  out.replace(pos, kPlaceholder.size(), term);
  return out;
}

// Builtins plus any custom templates. Immutable once built.
class Registry {
 public:
  Registry() : templates_(builtin_templates()) {}

  void add(PromptTemplate t) {
    validate(t);
    for (const auto& b : builtin_templates()) {
      if (b.id == t.id) throw DataError("template id '" + t.id + "' is reserved");
    }
    if (contains(t.id)) throw DataError("duplicate template id '" + t.id + "'");
    templates_.push_back(std::move(t));
  }

  // Records of {"id", "family", "pattern"}, one per line.
  void load_file(const std::filesystem::path& path) {
    for (const auto& rec : io::read_jsonl(path)) {
      for (const char* field : {"id", "family", "pattern"}) {
        if (!rec.contains(field) || !rec[field].is_string()) {
          throw DataError(path.string() + ": template record missing field '" + field + "'");
        }
      }
      add({rec["id"].get<std::string>(), parse_family(rec["family"].get<std::string>()),
           rec["pattern"].get<std::string>()});
    }
  }

  bool contains(std::string_view id) const {
    return std::any_of(templates_.begin(), templates_.end(),
                       [&](const PromptTemplate& t) { return t.id == id; });
  }

  const PromptTemplate& at(std::string_view id) const {
    for (const auto& t : templates_) {
      if (t.id == id) return t;
    }
    throw UsageError("unknown template id '" + std::string(id) + "'");
  }

  std::vector<PromptTemplate> select(const std::vector<std::string>& ids) const {
    std::vector<PromptTemplate> out;
    for (const auto& id : ids) out.push_back(at(id));
    return out;
  }

  std::vector<PromptTemplate> family(Family f) const {
    std::vector<PromptTemplate> out;
    std::copy_if(templates_.begin(), templates_.end(), std::back_inserter(out),
                 [f](const PromptTemplate& t) { return t.family == f; });
    return out;
  }

  const std::vector<PromptTemplate>& all() const { return templates_; }

 private:
  std::vector<PromptTemplate> templates_;
};

}  // namespace glossgauge::prompting

#endif  // GLOSSGAUGE_PROMPTING_HPP_
