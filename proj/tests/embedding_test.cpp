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

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "glossgauge/embedding.hpp"
#include "test_util.hpp"

namespace glossgauge::embedding {
namespace {

using testing::FakeService;
using testing::TempDir;

// Independent FNV-1a 64 for the oracle, byte by byte.
std::uint64_t oracle_fnv(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

TEST(HashedStub, TheCatByHand) {
  const int d = 16;
  std::vector<double> expected(d, 0.0);
  expected[oracle_fnv("the") % d] += 1.0;
  expected[oracle_fnv("cat") % d] += 1.0;
  double n = 0.0;
  for (double x : expected) n += x * x;
  for (double& x : expected) x /= std::sqrt(n);

  const auto v = hashed_stub_embed("The, CAT!", d);
  EXPECT_EQ(v.provider_id, "hashed_stub/d16/s0");
  ASSERT_EQ(v.dimension(), 16u);
  for (int i = 0; i < d; ++i) EXPECT_NEAR(v.values[i], expected[i], 1e-15) << i;
}

TEST(HashedStub, EmptyIsE0) {
  for (const char* t : {"", "   ", "?!"}) {
    const auto v = hashed_stub_embed(t, 32);
    EXPECT_EQ(v.values[0], 1.0);
    EXPECT_EQ(l2_norm(v.values), 1.0);
  }
}

TEST(HashedStub, UnitNormAndSmallDimensionRejected) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcdefgh ijk,lmn. op";
  for (int i = 0; i < 200; ++i) {
    std::string s;
    const auto len = rng() % 60;
    for (std::uint64_t j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
    EXPECT_NEAR(l2_norm(hashed_stub_embed(s, 64).values), 1.0, 1e-12);
  }
  EXPECT_THROW(hashed_stub_embed("x", 4), UsageError);
}

TEST(HashedStub, DisjointBucketsGiveZeroCosine) {
  const int d = 256;
  // Find two tokens that land in different buckets.
  std::string a = "alpha", b;
  for (int i = 0;; ++i) {
    b = "tok" + std::to_string(i);
    if (oracle_fnv(a) % d != oracle_fnv(b) % d) break;
  }
  EXPECT_EQ(cosine_similarity(hashed_stub_embed(a, d), hashed_stub_embed(b, d)), 0.0);
  EXPECT_NEAR(cosine_similarity(hashed_stub_embed(a, d), hashed_stub_embed(a + " " + a, d)), 1.0,
              1e-15);
}

TEST(HashedStub, SeedChangesBuckets) {
  EXPECT_NE(hashed_stub_embed("carbon sink", 64, 0).values, hashed_stub_embed("carbon sink", 64, 5).values);
  EXPECT_EQ(hashed_stub_embed("x", 64, 5).provider_id, "hashed_stub/d64/s5");
}

TEST(Cosine, MatchesNaiveLoopAndIsSymmetric) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(48), b(48);
    for (auto& x : a) x = nd(rng);
    for (auto& x : b) x = nd(rng);
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      dot += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    const double naive = dot / std::sqrt(na * nb);
    normalize(a);
    normalize(b);
    const EmbeddingVector va{a, "p"}, vb{b, "p"};
    EXPECT_NEAR(cosine_similarity(va, vb), naive, 1e-9);
    EXPECT_EQ(cosine_similarity(va, vb), cosine_similarity(vb, va));
    EXPECT_GE(cosine_similarity(va, vb), -1.0);
    EXPECT_LE(cosine_similarity(va, vb), 1.0);
  }
}

TEST(Cosine, MismatchesAreErrors) {
  EXPECT_THROW(cosine_similarity(hashed_stub_embed("a", 16), hashed_stub_embed("a", 32)), UsageError);
  EXPECT_THROW(cosine_similarity(hashed_stub_embed("a", 16, 0), hashed_stub_embed("a", 16, 1)),
               UsageError);
  EXPECT_THROW(cosine_similarity({{1.0, 0.0}, "x"}, {{1.0}, "x"}), UsageError);
}

TEST(EmbedBatch, OrderDedupAndEmpty) {
  HashedStubProvider p(64, 0);
  EmbeddingCache cache;
  std::vector<std::size_t> empties;
  const std::vector<std::string> texts{"b c", "a", "", "b c", "  "};
  const auto out = embed_batch(texts, p, cache, 32, &empties);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out[0], out[3]);
  EXPECT_EQ(empties, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(out[2].values[0], 1.0);
  EXPECT_EQ(cache.size(), 2u);
  for (const auto& v : out) EXPECT_NEAR(l2_norm(v.values), 1.0, 1e-8);
  const auto direct = hashed_stub_embed("a", 64);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(out[1].values[i], direct.values[i], 1e-9);
}

TEST(EmbedBatch, BatchingSplitsCalls) {
  HashedStubProvider p(32, 0);
  EmbeddingCache cache;
  std::vector<std::string> texts;
  for (int i = 0; i < 10; ++i) texts.push_back("text " + std::to_string(i));
  embed_batch(texts, p, cache, 4);
  EXPECT_EQ(p.calls(), 3u);
}

TEST(EmbedBatch, WarmCacheIsBitIdenticalWithNoCalls) {
  TempDir tmp;
  const std::vector<std::string> texts{"Carbon dioxide removal.", "The ocean warms.", "x y z"};
  std::vector<EmbeddingVector> cold;
  {
    HashedStubProvider p(128, 3);
    EmbeddingCache cache(tmp.path());
    cold = embed_batch(texts, p, cache);
    EXPECT_EQ(p.calls(), 1u);
  }
  HashedStubProvider p(128, 3);
  EmbeddingCache cache(tmp.path());
  EXPECT_EQ(cache.size(), 3u);
  const auto warm = embed_batch(texts, p, cache);
  EXPECT_EQ(p.calls(), 0u);
  EXPECT_EQ(warm, cold);
}

TEST(EmbedBatch, CacheIsKeyedByProvider) {
  EmbeddingCache cache;
  HashedStubProvider a(32, 0), b(64, 0);
  embed_batch({"same text"}, a, cache);
  embed_batch({"same text"}, b, cache);
  EXPECT_EQ(a.calls(), 1u);
  EXPECT_EQ(b.calls(), 1u);
}

EmbeddingProviderConfig http_config(const std::string& endpoint) {
  EmbeddingProviderConfig cfg;
  cfg.kind = ProviderKind::kHttp;
  cfg.endpoint = endpoint;
  cfg.model = "embed-test";
  cfg.dimension = 0;
  cfg.max_retries = 0;
  cfg.retry_base_delay = std::chrono::milliseconds(1);
  return cfg;
}

TEST(HttpProvider, WireFormatAndIndexOrder) {
  FakeService svc([](const FakeService::Request& r, httplib::Response& res) {
    nlohmann::json data = nlohmann::json::array();
    const auto& input = r.body.at("input");
    // Reply in reverse order; the index field says where each belongs.
    for (std::size_t i = input.size(); i-- > 0;) {
      const double x = static_cast<double>(input[i].get<std::string>().size());
      data.push_back({{"index", i}, {"embedding", {x, 1.0, 0.0}}});
    }
    testing::reply_json(res, {{"data", data}});
  });
  auto provider = make_provider(http_config(svc.endpoint()));
  EXPECT_EQ(provider->id(), "http/embed-test");
  EmbeddingCache cache;
  const auto out = embed_batch({"ab", "abcd"}, *provider, cache);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0].values[0], 2.0 / std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(out[1].values[0], 4.0 / std::sqrt(17.0), 1e-9);
  EXPECT_EQ(provider->dimension(), 3u);

  const auto reqs = svc.requests();
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(reqs[0].path, "/v1/embeddings");
  EXPECT_EQ(reqs[0].body.at("model"), "embed-test");
  EXPECT_EQ(reqs[0].body.at("input"), nlohmann::json({"ab", "abcd"}));
}

TEST(HttpProvider, DimensionMismatchIsProviderFault) {
  FakeService svc([](const FakeService::Request& r, httplib::Response& res) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t i = 0; i < r.body.at("input").size(); ++i) {
      data.push_back({{"embedding", std::vector<double>(i == 0 ? 3 : 4, 1.0)}});
    }
    testing::reply_json(res, {{"data", data}});
  });
  auto provider = make_provider(http_config(svc.endpoint()));
  EmbeddingCache cache;
  EXPECT_THROW(embed_batch({"a", "b"}, *provider, cache), BackendError);
}

TEST(HttpProvider, WrongItemCountIsBackendError) {
  FakeService svc([](const FakeService::Request&, httplib::Response& res) {
    testing::reply_json(res, {{"data", nlohmann::json::array()}});
  });
  auto provider = make_provider(http_config(svc.endpoint()));
  EmbeddingCache cache;
  EXPECT_THROW(embed_batch({"a"}, *provider, cache), BackendError);
}

TEST(Quantize, IsIdempotent) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double q = quantize(u(rng));
    EXPECT_EQ(quantize(q), q);
  }
}

}  // namespace
}  // namespace glossgauge::embedding
