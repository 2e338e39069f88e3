// Copyright 2026 The Facetwise Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "facetwise/eval.hpp"
#include "facetwise/retrieval.hpp"
#include "fd_oracle.hpp"
#include "test_util.hpp"

namespace facetwise {
namespace {

using testing::kw;

// ---------------------------------------------------------------------------
// Features
// ---------------------------------------------------------------------------

TEST(Featurize, EmptyTextIsZeroVector) {
  auto x = featurize("");
  EXPECT_TRUE(x.empty());
  EXPECT_EQ(x.dim, kDefaultFeatureDim);
  EXPECT_TRUE(featurize("!!  ").empty());
}

TEST(Featurize, DeterministicAndUnitNorm) {
  auto a = featurize("registered nurse telemetry");
  EXPECT_EQ(a, featurize("registered nurse telemetry"));
  EXPECT_NEAR(a.norm(), 1.0, 1e-12);
  EXPECT_EQ(a, featurize("Registered,  NURSE telemetry"));
}

TEST(Featurize, RepeatedTextIsParallel) {
  auto a = featurize("nurse");
  auto b = featurize("nurse nurse");
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].first, b.entries[i].first);
    EXPECT_NEAR(a.entries[i].second, b.entries[i].second, 1e-12);
  }
}

TEST(Featurize, CountsWordAndTrigramFeatures) {
  // "ab" -> one word feature plus trigrams "#ab" and "ab#".
  auto x = featurize("ab", 1 << 20);
  double total = 0;
  for (auto& [i, v] : x.entries) total += v * v;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(x.entries.size(), 3u);
}

// ---------------------------------------------------------------------------
// Encoder
// ---------------------------------------------------------------------------

struct EncoderCase : ::testing::Test {
  std::shared_ptr<const EncoderParams> params =
      std::make_shared<const EncoderParams>(EncoderParams::random(512, 16, 3));
  SiameseEncoder enc{params};
};

TEST_F(EncoderCase, OutputsAreUnitNorm) {
  auto q = enc.encode_query("registered nurse", MemberContext{{"charge nurse"}, {"Healthcare"}});
  auto d = enc.encode_facet(kw("a", FacetType::kDomainKnowledge, "Telemetry",
                               "cardiac monitoring"));
  double nq = 0, nd = 0;
  for (double v : q.values()) nq += v * v;
  for (double v : d.values()) nd += v * v;
  EXPECT_NEAR(std::sqrt(nq), 1.0, 1e-9);
  EXPECT_NEAR(std::sqrt(nd), 1.0, 1e-9);
  EXPECT_EQ(q.size(), 16u);
}

TEST_F(EncoderCase, BothTowersShareOneParameterObject) {
  EXPECT_EQ(&enc.query_tower(), &enc.facet_tower());
  EXPECT_EQ(&enc.query_tower(), params.get());
}

TEST_F(EncoderCase, DefinitionChangesTheFacetVector) {
  auto with = enc.encode_facet(kw("a", FacetType::kDomainKnowledge, "Telemetry",
                                  "cardiac rhythm monitoring for registered nurse"));
  auto without = enc.encode_facet(kw("a", FacetType::kDomainKnowledge, "Telemetry"));
  EXPECT_FALSE(with == without);
  EXPECT_EQ(without, enc.encode_facet(kw("a", FacetType::kDomainKnowledge, "Telemetry")));
}

TEST_F(EncoderCase, MemberIsAppendedToQuerySide) {
  EXPECT_EQ(query_side_text("rn", MemberContext{{"nurse"}, {"Health"}}),
            "rn titles: nurse; industries: Health");
  EXPECT_EQ(query_side_text("rn", std::nullopt), "rn");
  EXPECT_FALSE(enc.encode_query("rn", std::nullopt) ==
               enc.encode_query("rn", MemberContext{{"nurse"}, {}}));
}

TEST_F(EncoderCase, EmptyInputCannotBeEncoded) {
  EXPECT_THROW(enc.encode_query("", std::nullopt), ValidationError);
  EXPECT_THROW(EmbeddingVector::normalized(Vec(4, 0.0)), ValidationError);
}

TEST_F(EncoderCase, DimensionMismatchIsRejected) {
  EXPECT_THROW(encode_features(featurize("nurse", 100), *params), ValidationError);
  EncoderParams bad = *params;
  bad.projection.pop_back();
  EXPECT_THROW(bad.validate(), ValidationError);
}

// ---------------------------------------------------------------------------
// Losses. The oracle is an independent long double evaluation of each
// objective, differentiated numerically.
// ---------------------------------------------------------------------------

using testing::bce_reference;
using testing::derivative;
using testing::infonce_reference;
using testing::relative_error;
using testing::widen;

std::vector<Vec> random_vectors(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<Vec> out(n, Vec(d));
  for (auto& v : out) {
    for (double& x : v) x = rng.normal(0.5);
  }
  return out;
}

TEST(InfoNCE, SingletonBatchHasZeroLoss) {
  std::vector<Vec> q = {{0.6, 0.8}}, d = {{1.0, 0.0}};
  auto l = infonce_loss(q, d, 0.05);
  EXPECT_EQ(l.loss, 0.0);
  for (double g : l.grad_queries[0]) EXPECT_EQ(g, 0.0);
  for (double g : l.grad_facets[0]) EXPECT_EQ(g, 0.0);
}

TEST(InfoNCE, EqualSimilaritiesGiveLn2) {
  std::vector<Vec> q = {{1, 0}, {1, 0}}, d = {{0.5, 0}, {0.5, 0}};
  EXPECT_NEAR(infonce_loss(q, d, 0.05).loss, std::log(2.0), 1e-12);
}

TEST(InfoNCE, OrthogonalPairsMatchClosedForm) {
  std::vector<Vec> q = {{1, 0}, {0, 1}}, d = {{1, 0}, {0, 1}};
  EXPECT_NEAR(infonce_loss(q, d, 1.0).loss, std::log1p(std::exp(-1.0)), 1e-12);
  EXPECT_NEAR(std::log1p(std::exp(-1.0)), 0.3133, 5e-5);
}

TEST(InfoNCE, LargeMarginIsNearZero) {
  std::vector<Vec> q = {{1, 0}, {0, 1}}, d = {{1, 0}, {0, 1}};
  EXPECT_LT(infonce_loss(q, d, 0.05).loss, 1e-6);
}

TEST(InfoNCE, InvalidInputs) {
  std::vector<Vec> q = {{1, 0}}, d = {{1, 0}};
  EXPECT_THROW(infonce_loss(q, d, 0.0), ValidationError);
  EXPECT_THROW(infonce_loss(q, d, -1.0), ValidationError);
  std::vector<Vec> nan = {{NAN, 0}};
  EXPECT_THROW(infonce_loss(nan, d, 1.0), ValidationError);
  std::vector<Vec> two = {{1, 0}, {0, 1}};
  EXPECT_THROW(infonce_loss(q, two, 1.0), ValidationError);
  EXPECT_THROW(infonce_loss(std::span<const Vec>{}, std::span<const Vec>{}, 1.0),
               ValidationError);
}

TEST(InfoNCE, MatchesReferenceAndFiniteDifferences) {
  Rng rng(17);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(8), dim = 1 + rng.index(16);
    const double tau = 0.1 + rng.uniform();
    auto q = random_vectors(rng, n, dim), d = random_vectors(rng, n, dim);
    auto l = infonce_loss(q, d, tau);
    auto lq = widen(q), ld = widen(d);
    ASSERT_NEAR(l.loss, static_cast<double>(infonce_reference(lq, ld, tau)), 1e-10);
    ASSERT_GE(l.loss, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        auto fq = [&](long double x) {
          auto p = lq;
          p[i][k] = x;
          return infonce_reference(p, ld, tau);
        };
        auto fd = [&](long double x) {
          auto p = ld;
          p[i][k] = x;
          return infonce_reference(lq, p, tau);
        };
        worst = std::max(worst, relative_error(l.grad_queries[i][k], derivative(fq, lq[i][k])));
        worst = std::max(worst, relative_error(l.grad_facets[i][k], derivative(fd, ld[i][k])));
      }
    }
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(BCE, Examples) {
  Vec z0 = {0.0};
  std::vector<int> one = {1};
  EXPECT_NEAR(bce_loss(z0, one).loss, std::log(2.0), 1e-12);
  Vec z20 = {20.0};
  EXPECT_LT(bce_loss(z20, one).loss, 1e-8);
  Vec z = {1, -1};
  std::vector<int> y = {1, 0};
  EXPECT_NEAR(bce_loss(z, y).loss, std::log1p(std::exp(-1.0)), 1e-12);
  // Saturated logits stay finite where the naive form overflows.
  Vec big = {800.0, -800.0};
  std::vector<int> wrong = {0, 1};
  EXPECT_NEAR(bce_loss(big, wrong).loss, 800.0, 1e-9);
}

TEST(BCE, InvalidInputs) {
  Vec z = {0.0};
  std::vector<int> y2 = {1, 0}, bad = {2};
  EXPECT_THROW(bce_loss(z, y2), ValidationError);
  EXPECT_THROW(bce_loss(z, bad), ValidationError);
  EXPECT_THROW(bce_loss(std::span<const double>{}, std::span<const int>{}), ValidationError);
}

TEST(BCE, MatchesReferenceAndFiniteDifferences) {
  Rng rng(23);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    Vec z(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = rng.normal(3.0);
      y[i] = rng.bernoulli(0.5);
    }
    auto l = bce_loss(z, y);
    testing::LVec lz(z.begin(), z.end());
    ASSERT_NEAR(l.loss, static_cast<double>(bce_reference(lz, y)), 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      auto f = [&](long double x) {
        auto p = lz;
        p[i] = x;
        return bce_reference(p, y);
      };
      worst = std::max(worst, relative_error(l.grad[i], derivative(f, lz[i])));
    }
  }
  EXPECT_LT(worst, 1e-5);
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

const Corpus& small_corpus() {
  static const Corpus c = [] {
    CorpusSizes s;
    s.queries_per_occupation = 8;
    return generate_corpus(404, s);
  }();
  return c;
}

EncoderTrainConfig small_config() {
  EncoderTrainConfig cfg;
  cfg.feature_dim = 1024;
  cfg.embed_dim = 32;
  cfg.epochs = 8;
  return cfg;
}

TEST(TrainEncoder, ZeroLearningRateLeavesParamsUnchanged) {
  auto cfg = small_config();
  cfg.learning_rate = 0;
  cfg.epochs = 1;
  auto init = EncoderParams::random(cfg.feature_dim, cfg.embed_dim, cfg.seed);
  EXPECT_EQ(train_encoder(small_corpus().examples, cfg), init);
}

TEST(TrainEncoder, SameSeedIsBitwiseEqual) {
  auto cfg = small_config();
  cfg.epochs = 2;
  EXPECT_EQ(train_encoder(small_corpus().examples, cfg),
            train_encoder(small_corpus().examples, cfg));
}

TEST(TrainEncoder, LossDecreasesMonotonicallyWithinOnePercent) {
  for (auto obj : {EncoderObjective::kInfoNCE, EncoderObjective::kBinaryCrossEntropy}) {
    auto cfg = small_config();
    cfg.objective = obj;
    TrainHistory h;
    train_encoder(small_corpus().examples, cfg, &h);
    ASSERT_EQ(h.epoch_loss.size(), cfg.epochs);
    EXPECT_LT(h.epoch_loss.back(), h.epoch_loss.front());
    for (std::size_t e = 1; e < h.epoch_loss.size(); ++e) {
      EXPECT_LE(h.epoch_loss[e], h.epoch_loss[e - 1] * 1.01) << "epoch " << e;
    }
  }
}

TEST(TrainEncoder, RequiresPositives) {
  std::vector<LabeledExample> negatives;
  for (const auto& e : small_corpus().examples) {
    if (e.verdict.label == Label::kPoor) negatives.push_back(e);
  }
  EXPECT_THROW(train_encoder(negatives, small_config()), ValidationError);
}

TEST(TrainEncoder, SaveLoadRoundTrip) {
  auto p = EncoderParams::random(256, 8, 5);
  auto path = (testing::scratch_dir("encoder") / "enc.bin").string();
  save_encoder(p, path);
  EXPECT_EQ(load_encoder(path), p);
  std::ofstream(path, std::ios::binary) << "garbage";
  EXPECT_THROW(load_encoder(path), Error);
}

// ---------------------------------------------------------------------------
// Index and quotas
// ---------------------------------------------------------------------------

struct IndexCase : ::testing::Test {
  const SyntheticOntology& o = testing::default_ontology();
  std::shared_ptr<const EncoderParams> params =
      std::make_shared<const EncoderParams>(EncoderParams::random(kDefaultFeatureDim, 64, 1));
  SiameseEncoder enc{params};
};

TEST_F(IndexCase, IndexCoversValidatedKeywordsOnly) {
  auto t = o.taxonomy();
  auto index = build_index(t, enc);
  EXPECT_EQ(index.size(), 400u);
  auto retired = t.with_status(t.keywords()[5].id, KeywordStatus::kRetired);
  auto smaller = build_index(retired, enc);
  EXPECT_EQ(smaller.size(), 399u);
  EXPECT_EQ(smaller.find(t.keywords()[5].id), nullptr);
  auto again = build_index(t, enc);
  for (std::size_t i = 0; i < index.size(); ++i) {
    EXPECT_EQ(index.entries()[i].embedding, again.entries()[i].embedding);
  }
  EXPECT_THROW(build_index(Taxonomy{}, enc), ValidationError);
}

// Exhaustive oracle: score everything, sort globally, take the first n of
// each type, then re-sort the union.
std::vector<std::string> brute_force_ids(const EmbeddingVector& q, const FacetIndex& index,
                                         const QuotaConfig& quotas) {
  std::vector<std::tuple<double, std::string, FacetType>> all;
  for (const auto& e : index.entries()) {
    all.emplace_back(q.dot(e.embedding), e.keyword.id, e.keyword.facet_type);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  std::array<std::size_t, 4> taken{};
  std::vector<std::string> out;
  for (const auto& [s, id, t] : all) {
    if (taken[type_index(t)] < quotas[t]) {
      ++taken[type_index(t)];
      out.push_back(id);
    }
  }
  return out;
}

TEST_F(IndexCase, FullPoolRetrievesQuotaHistogram) {
  auto index = build_index(o.taxonomy(), enc);
  auto got = retrieve_with_quotas(enc.encode_query("registered nurse", std::nullopt), index);
  ASSERT_EQ(got.size(), 27u);
  std::array<std::size_t, 4> h{};
  for (const auto& c : got) ++h[type_index(c.keyword.facet_type)];
  EXPECT_EQ(h, (std::array<std::size_t, 4>{16, 5, 5, 1}));
  for (std::size_t i = 1; i < got.size(); ++i) {
    EXPECT_GE(got[i - 1].retrieval_similarity, got[i].retrieval_similarity);
    EXPECT_FALSE(got[i].p_yes.has_value());
  }
}

TEST_F(IndexCase, ShortTypeIsNotBackfilled) {
  std::vector<FacetKeyword> ks;
  std::size_t industries = 0;
  const auto full = o.taxonomy();
  for (const auto& k : full.keywords()) {
    if (k.facet_type == FacetType::kIndustry && industries++ >= 3) continue;
    ks.push_back(k);
  }
  auto index = build_index(Taxonomy(ks), enc);
  auto got = retrieve_with_quotas(enc.encode_query("attorney", std::nullopt), index);
  EXPECT_EQ(got.size(), 25u);
  EXPECT_EQ(std::count_if(got.begin(), got.end(),
                          [](const auto& c) { return c.keyword.facet_type == FacetType::kIndustry; }),
            3);
}

TEST_F(IndexCase, MatchesExhaustiveOracle) {
  auto index = build_index(o.taxonomy(), enc);
  Rng rng(8);
  QuotaConfig odd{{3, 0, 7, 2}};
  for (int trial = 0; trial < 30; ++trial) {
    const auto& occ = o.occupations()[rng.index(o.occupations().size())];
    auto q = enc.encode_query(occ.title + " " + std::to_string(trial), std::nullopt);
    for (const auto& quotas : {QuotaConfig{}, odd}) {
      auto got = retrieve_with_quotas(q, index, quotas);
      std::vector<std::string> ids;
      for (const auto& c : got) ids.push_back(c.keyword.id);
      EXPECT_EQ(ids, brute_force_ids(q, index, quotas));
    }
  }
}

TEST(Quotas, TiesBreakByIdAscending) {
  // Identical text embeds identically, so similarities tie exactly.
  auto params = std::make_shared<const EncoderParams>(EncoderParams::random(256, 8, 2));
  SiameseEncoder enc(params);
  Taxonomy t({kw("b", FacetType::kFunction, "Nursing", "x"),
              kw("a", FacetType::kDomainKnowledge, "Nursing", "x")});
  auto index = build_index(t, enc);
  auto got = retrieve_with_quotas(enc.encode_query("nurse", std::nullopt), index,
                                  QuotaConfig{{1, 1, 0, 0}});
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].keyword.id, "a");
  EXPECT_EQ(got[1].keyword.id, "b");
}

}  // namespace
}  // namespace facetwise
