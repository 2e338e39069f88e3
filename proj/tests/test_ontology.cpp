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

#include "facetwise/eval.hpp"
#include "facetwise/ontology.hpp"
#include "facetwise/oracle_judge.hpp"
#include "test_util.hpp"

namespace facetwise {
namespace {

TEST(Ontology, DefaultSizesGiveFourHundredFacets) {
  const auto& o = testing::default_ontology();
  EXPECT_EQ(o.occupations().size(), 20u);
  EXPECT_EQ(o.facets().size(), 400u);
  auto h = o.taxonomy().type_histogram();
  EXPECT_EQ(h, (std::array<std::size_t, 4>{320, 40, 37, 3}));
}

TEST(Ontology, EveryOccupationCanFillTheQuotas) {
  const auto& o = testing::default_ontology();
  QuotaConfig q;
  for (const auto& occ : o.occupations()) {
    for (auto t : kAllFacetTypes) {
      EXPECT_GE(o.linked_facets(occ, t).size(), q[t]) << occ.id << " " << to_string(t);
    }
  }
}

TEST(Ontology, GenerationIsSeedDeterministic) {
  EXPECT_EQ(generate_ontology(7, {}, {}), generate_ontology(7, {}, {}));
  EXPECT_FALSE(generate_ontology(7, {}, {}) == generate_ontology(8, {}, {}));
}

TEST(Ontology, InfeasibleSizesNameTheQuota) {
  OntologySizes s;
  s.industries = 4;
  try {
    generate_ontology(1, s, {});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Industry"), std::string::npos);
  }
  s = {};
  s.domain_knowledge = 100;
  try {
    generate_ontology(1, s, {});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("DomainKnowledge"), std::string::npos);
  }
}

TEST(Ontology, QuotaFeasibilityHoldsAcrossSeedsAndSizes) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    OntologySizes s;
    s.occupations = 24;  // beyond the named table
    s.domain_knowledge = 400;
    auto o = generate_ontology(seed, s, {});
    EXPECT_NO_THROW(o.check_quota_feasible({}));
  }
}

TEST(Ontology, ResolvesTitlesAndIds) {
  const auto& o = testing::default_ontology();
  ASSERT_NE(o.resolve_occupation("remote registered nurse jobs"), nullptr);
  EXPECT_EQ(o.resolve_occupation("registered nurse")->title, "registered nurse");
  EXPECT_EQ(o.resolve_occupation("occ_07")->id, "occ_07");
  EXPECT_EQ(o.resolve_occupation("astronaut"), nullptr);
  // "software engineer" must not resolve to "devops engineer".
  EXPECT_EQ(o.resolve_occupation("senior software engineer")->title, "software engineer");
}

TEST(Ontology, FacetsInSkipsTitleTokens) {
  const auto& o = testing::default_ontology();
  const auto* occ = o.resolve_occupation("registered nurse");
  auto found = o.facets_in("registered nurse Telemetry Remote", occ);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0]->name, "Telemetry");
  EXPECT_EQ(found[1]->name, "Remote");
}

TEST(Ontology, JobCountsNarrowWithEachFacet) {
  const auto& o = testing::default_ontology();
  OntologyJobCounts jobs(o);
  const auto* occ = o.resolve_occupation("registered nurse");
  auto base = jobs.job_count("registered nurse");
  EXPECT_EQ(base, occ->base_jobs);
  auto one = jobs.job_count("registered nurse Telemetry");
  EXPECT_LE(one, base);
  EXPECT_EQ(one, o.link(*occ, testing::ontology_keyword(o, "Telemetry").id)->job_count);
  EXPECT_LE(jobs.job_count("registered nurse Telemetry Remote"), one);
  EXPECT_LT(jobs.job_count("registered nurse Litigation"), 10);
  EXPECT_EQ(jobs.job_count("astronaut"), 0);
}

TEST(Ontology, SaveLoadRoundTrip) {
  const auto& o = testing::default_ontology();
  auto path = (testing::scratch_dir("ontology") / "o.json").string();
  save_ontology(o, path);
  EXPECT_EQ(load_ontology(path), o);
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

const Corpus& default_corpus() {
  static const Corpus c = generate_corpus(2026);
  return c;
}

TEST(Corpus, PlantedPositiveRateIsExact) {
  const auto& c = default_corpus();
  std::size_t pos = 0;
  for (const auto& e : c.examples) pos += e.verdict.label == Label::kOkay;
  EXPECT_EQ(pos * 10, c.examples.size() * 3);
  EXPECT_DOUBLE_EQ(c.stats.planted_positive_rate, 0.3);
  EXPECT_DOUBLE_EQ(c.stats.observed_positive_rate, 0.3);
  EXPECT_EQ(c.taxonomy.size(), 400u);
}

TEST(Corpus, OracleReproducesEveryLabel) {
  const auto& c = default_corpus();
  OracleJudge judge(c.ontology);
  std::vector<JudgePair> pairs;
  for (const auto& e : c.examples) pairs.push_back({e.query, e.member, e.keyword});
  auto relabeled = label_dataset(pairs, judge);
  ASSERT_EQ(relabeled.size(), c.examples.size());
  for (std::size_t i = 0; i < relabeled.size(); ++i) {
    ASSERT_EQ(relabeled[i].verdict, c.examples[i].verdict) << i;
  }
}

TEST(Corpus, SameSeedSameCorpus) {
  auto a = generate_corpus(31);
  auto b = generate_corpus(31);
  EXPECT_EQ(a.examples, b.examples);
  EXPECT_EQ(a.ontology, b.ontology);
  ASSERT_EQ(a.queries.size(), b.queries.size());
  for (std::size_t i = 0; i < a.queries.size(); ++i) {
    EXPECT_EQ(a.queries[i].text, b.queries[i].text);
    EXPECT_EQ(a.queries[i].held_out, b.queries[i].held_out);
  }
}

TEST(Corpus, HeldOutSplitIsByQuery) {
  const auto& c = default_corpus();
  EXPECT_EQ(c.stats.held_out_queries, static_cast<std::size_t>(std::llround(0.2 * c.queries.size())));
  std::set<std::pair<std::string, std::string>> train, held;
  auto key = [](const LabeledExample& e) {
    return std::pair{e.query, e.member ? serialize_member(*e.member) : ""};
  };
  for (const auto& e : c.train_examples()) train.insert(key(e));
  for (const auto& e : c.held_out_examples()) held.insert(key(e));
  for (const auto& k : held) EXPECT_FALSE(train.count(k));
  EXPECT_EQ(c.train_examples().size() + c.held_out_examples().size(), c.examples.size());
}

TEST(Corpus, ContainsEveryFailureMode) {
  const auto& c = default_corpus();
  std::size_t c1 = 0, c2 = 0, c3 = 0, members = 0;
  for (const auto& e : c.examples) {
    c1 += !e.verdict.c1_query_faithfulness;
    c2 += !e.verdict.c2_member_plausibility;
    c3 += !e.verdict.c3_refinement_utility;
    members += e.member.has_value();
  }
  EXPECT_GT(c1, 0u);
  EXPECT_GT(c2, 0u);
  EXPECT_GT(c3, 0u);
  EXPECT_GT(members, 0u);
  EXPECT_LT(members, c.examples.size());
}

TEST(Corpus, InfeasibleSizesAreRejected) {
  CorpusSizes s;
  s.ontology.functions = 2;
  EXPECT_THROW(generate_corpus(1, s), ValidationError);
}

}  // namespace
}  // namespace facetwise
