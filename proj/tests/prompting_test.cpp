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

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "glossgauge/prompting.hpp"
#include "test_util.hpp"

namespace glossgauge::prompting {
namespace {

TEST(BuiltinTemplates, EightWithExpectedIds) {
  const auto ts = builtin_templates();
  ASSERT_EQ(ts.size(), 8u);
  const std::vector<std::string> ids{"base1", "base2", "base3", "base4",
                                     "base5", "ipcc",  "readable", "ipcc_readable"};
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(ts[i].id, ids[i]);
  Registry reg;
  EXPECT_EQ(reg.family(Family::kBase).size(), 5u);
  for (const auto& t : ts) EXPECT_NO_THROW(validate(t));
}

TEST(BuiltinTemplates, VerbatimPatterns) {
  Registry reg;
  EXPECT_EQ(reg.at("base1").pattern, "Define \"[TERM]\" in one sentence.");
  EXPECT_EQ(reg.at("base2").pattern, "How would you define \"[TERM]\" in a single sentence?");
  EXPECT_EQ(reg.at("base3").pattern, "Can you describe \"[TERM]\" in just one sentence?");
  EXPECT_EQ(reg.at("base4").pattern, "What is your one-sentence definition of \"[TERM]\"?");
  EXPECT_EQ(reg.at("base5").pattern, "In one sentence, what does \"[TERM]\" mean to you?");
  EXPECT_EQ(reg.at("ipcc").pattern,
            "Define \"[TERM]\" in one sentence. Adhere to the official Intergovernmental Panel on "
            "Climate Change (IPCC) glossary without citing it.");
  EXPECT_EQ(reg.at("readable").pattern,
            "Define \"[TERM]\" in one sentence. You must also make the definition understandable "
            "by a 10-year old.");
  EXPECT_EQ(reg.at("ipcc_readable").pattern,
            "Define \"[TERM]\" in one sentence. Adhere to the official Intergovernmental Panel on "
            "Climate Change (IPCC) glossary without citing it. You must also make the definition "
            "understandable by a 10-year old.");
}

TEST(Render, Examples) {
  Registry reg;
  EXPECT_EQ(render(reg.at("base1"), "Leakage"), "Define \"Leakage\" in one sentence.");
  EXPECT_EQ(render(reg.at("base5"), "Sea ice"), "In one sentence, what does \"Sea ice\" mean to you?");
  EXPECT_THROW(render(reg.at("base1"), ""), UsageError);
}

TEST(Render, TermVerbatimNoEscaping) {
  Registry reg;
  EXPECT_EQ(render(reg.at("base1"), "Demand- and supply-side \"measures\""),
            "Define \"Demand- and supply-side \"measures\"\" in one sentence.");
}

// Property: rendering adds exactly one occurrence of the term and leaves the
// rest of the pattern intact.
TEST(Render, AddsTermOnceAndPreservesPattern) {
  std::mt19937_64 rng(11);
  Registry reg;
  for (int trial = 0; trial < 300; ++trial) {
    std::string term;
    const int len = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      const char alphabet[] = "abcdefghijklmnopqrstuvwxyz ABCXYZ0123456789-";
      term += alphabet[rng() % (sizeof(alphabet) - 1)];
    }
    if (text::trim_view(term).empty()) continue;
    for (const auto& t : reg.all()) {
      const auto out = render(t, term);
      EXPECT_EQ(text::count_occurrences(out, term), text::count_occurrences(t.pattern, term) + 1)
          << t.id << " / " << term;
      const auto pos = t.pattern.find(kPlaceholder);
      EXPECT_EQ(out.substr(0, pos), t.pattern.substr(0, pos));
      EXPECT_EQ(out.substr(pos + term.size()), t.pattern.substr(pos + kPlaceholder.size()));
    }
  }
}

TEST(Registry, CustomTemplatesFromFile) {
  testing::TempDir tmp;
  const auto file = tmp.path() / "templates.jsonl";
  io::atomic_write(file,
                   R"({"id": "plain", "family": "custom", "pattern": "Explain [TERM] briefly."})"
                   "\n");
  Registry reg;
  reg.load_file(file);
  EXPECT_EQ(render(reg.at("plain"), "Equity"), "Explain Equity briefly.");
  EXPECT_EQ(reg.all().size(), 9u);
}

TEST(Registry, RejectsReservedDuplicateAndBadPlaceholder) {
  Registry reg;
  EXPECT_THROW(reg.add({"base1", Family::kCustom, "x [TERM]"}), DataError);
  EXPECT_THROW(reg.add({"two", Family::kCustom, "[TERM] and [TERM]"}), DataError);
  EXPECT_THROW(reg.add({"none", Family::kCustom, "no placeholder"}), DataError);
  reg.add({"mine", Family::kCustom, "Say [TERM]."});
  EXPECT_THROW(reg.add({"mine", Family::kCustom, "Say [TERM]!"}), DataError);
  EXPECT_THROW(reg.at("missing"), UsageError);
}

}  // namespace
}  // namespace glossgauge::prompting
