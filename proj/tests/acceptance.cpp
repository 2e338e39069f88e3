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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "facetwise/eval.hpp"
#include "fd_oracle.hpp"

namespace fw = facetwise;
using fw::Vec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double max_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (max_seconds > 0 && secs >= max_seconds) {
    o.pass = false;
    o.detail << "[runtime " << secs << " s >= " << max_seconds << " s] ";
  }
  std::printf("%s  %-32s %s(%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.str().c_str(), secs);
  std::fflush(stdout);
  failures += !o.pass;
}

std::vector<Vec> random_vectors(fw::Rng& rng, std::size_t n, std::size_t d) {
  std::vector<Vec> out(n, Vec(d));
  for (auto& v : out) {
    for (double& x : v) x = rng.normal(0.5);
  }
  return out;
}

const fw::Stack& default_stack() {
  static const fw::Stack s = fw::build_stack(fw::StackConfig{});
  return s;
}

}  // namespace

int main() {
  using namespace facetwise::testing;

  criterion("infonce_correctness", 10.0, [](Outcome& o) {
    std::vector<Vec> q1 = {{0.6, 0.8}}, d1 = {{-0.3, 0.1}};
    const double single = fw::infonce_loss(q1, d1, 0.05).loss;
    o.require(single == 0.0, "N=1 loss is exactly 0");
    std::vector<Vec> q2 = {{1, 0}, {1, 0}}, d2 = {{0.3, 0.4}, {0.3, 0.4}};
    const double eq = fw::infonce_loss(q2, d2, 0.05).loss;
    o.require(std::abs(eq - std::log(2.0)) <= 1e-12, "equal similarities give ln 2");

    fw::Rng rng(20261014);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.index(8), dim = 1 + rng.index(16);
      const double tau = 0.05 + rng.uniform();
      auto q = random_vectors(rng, n, dim), d = random_vectors(rng, n, dim);
      auto l = fw::infonce_loss(q, d, tau);
      auto lq = widen(q), ld = widen(d);
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
    o.require(worst < 1e-5, "max relative gradient error < 1e-5");
    o.detail << "N=1 loss " << single << ", |N=2 - ln2| " << std::abs(eq - std::log(2.0))
             << ", max rel err " << worst << " ";
  });

  criterion("forward_kl_correctness", 0, [](Outcome& o) {
    const fw::TokenDistribution half(fw::binary_vocab(), {0.5, 0.5});
    const fw::TokenDistribution onehot(fw::binary_vocab(), {1.0, 0.0});
    const double same = fw::forward_kl(half, half);
    const double ln2 = fw::forward_kl(onehot, half);
    o.require(same <= 1e-12, "KL(p,p) <= 1e-12");
    o.require(std::abs(ln2 - std::log(2.0)) <= 1e-12, "KL((1,0),(.5,.5)) = ln 2");
    fw::Rng rng(7);
    std::vector<std::string> vocab = {"Yes", "No", "Maybe"};
    double min_kl = INFINITY, max_self = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec a = {rng.normal(3), rng.normal(3), rng.normal(3)};
      Vec b = {rng.normal(3), rng.normal(3), rng.normal(3)};
      auto p = fw::TokenDistribution::from_logits(vocab, a);
      auto q = fw::TokenDistribution::from_logits(vocab, b);
      min_kl = std::min(min_kl, fw::forward_kl(p, q));
      max_self = std::max(max_self, fw::forward_kl(p, p));
    }
    o.require(min_kl >= 0, "non-negative over 1000 random pairs");
    o.require(max_self <= 1e-12, "KL(p,p) <= 1e-12 over random p");
    o.detail << "KL(p,p) " << same << ", |KL - ln2| " << std::abs(ln2 - std::log(2.0))
             << ", min over 1000 pairs " << min_kl << " ";
  });

  criterion("distillation_convergence", 0, [](Outcome& o) {
    const auto& s = default_stack();
    const auto teacher = *s.supervised;
    const auto train = fw::scoring_inputs(s.corpus->train_examples());
    const auto held = fw::scoring_inputs(s.corpus->held_out_examples());
    for (std::uint64_t seed : {1, 2, 3}) {
      auto init = fw::ScorerParams::random(fw::FeatureMode::kFull, seed);
      fw::DistillConfig cfg;
      cfg.seed = seed;
      cfg.steps = 200;
      const double before = fw::mean_teacher_student_kl(init, teacher, held);
      const auto student = fw::distill_on_policy(init, teacher, train, cfg);
      const double after = fw::mean_teacher_student_kl(student, teacher, held);
      o.require(after <= 0.10 * before, "seed " + std::to_string(seed) + " KL ratio <= 0.10");
      o.detail << "seed " << seed << " ratio " << after / before << "; ";
    }
  });

  criterion("quota_retrieval", 0, [](Outcome& o) {
    const auto& s = default_stack();
    const auto& index = *s.index;
    o.require(index.size() == 400, "full pool has 400 keywords");
    const fw::QuotaConfig quotas;
    fw::Rng rng(11);
    std::size_t mismatches = 0, wrong_shape = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto& q = s.corpus->queries[rng.index(s.corpus->queries.size())];
      const auto emb = s.encoder->encode_query(q.text, q.member);
      const auto got = fw::retrieve_with_quotas(emb, index, quotas);
      std::array<std::size_t, 4> hist{};
      for (const auto& c : got) ++hist[fw::type_index(c.keyword.facet_type)];
      wrong_shape += got.size() != 27 || hist != std::array<std::size_t, 4>{16, 5, 5, 1};

      // Exhaustive scan: score all, order globally, admit by type until full.
      std::vector<std::tuple<double, std::string, fw::FacetType>> all;
      for (const auto& e : index.entries()) {
        all.emplace_back(emb.dot(e.embedding), e.keyword.id, e.keyword.facet_type);
      }
      std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) > std::get<0>(b)
                                                : std::get<1>(a) < std::get<1>(b);
      });
      std::array<std::size_t, 4> taken{};
      std::vector<std::string> want;
      for (const auto& [sim, id, t] : all) {
        if (taken[fw::type_index(t)] < quotas[t]) {
          ++taken[fw::type_index(t)];
          want.push_back(id);
        }
      }
      std::vector<std::string> ids;
      for (const auto& c : got) ids.push_back(c.keyword.id);
      mismatches += ids != want;
    }
    o.require(wrong_shape == 0, "27 candidates with histogram (16, 5, 5, 1)");
    o.require(mismatches == 0, "identical to exhaustive scan");
    o.detail << "100 queries, " << wrong_shape << " bad shapes, " << mismatches
             << " oracle mismatches ";
  });

  criterion("gate_soundness", 0, [](Outcome& o) {
    fw::Rng rng(5);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<fw::ScoredCandidate> c;
      const std::size_t n = rng.index(28);
      for (std::size_t i = 0; i < n; ++i) {
        // Coarse values force ties in p_yes and similarity.
        fw::FacetKeyword k{"k" + std::to_string(rng.index(50)) + "_" + std::to_string(i),
                           fw::FacetType::kFunction, "n", "", {}, fw::KeywordStatus::kValidated};
        c.push_back({k, rng.index(5) / 4.0, rng.index(21) / 20.0});
      }
      // Oracle: full sort by (p_yes desc, similarity desc, id asc), filter, truncate.
      auto sorted = c;
      std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::tie(*b.p_yes, b.retrieval_similarity, a.keyword.id) <
               std::tie(*a.p_yes, a.retrieval_similarity, b.keyword.id);
      });
      std::vector<std::string> want;
      for (const auto& x : sorted) {
        if (*x.p_yes > 0.5) want.push_back(x.keyword.id);
      }
      if (want.size() > 5) want.resize(5);
      std::vector<std::string> got;
      for (const auto& x : fw::rank_and_gate(c)) got.push_back(x.keyword.id);
      mismatches += got != want;
    }
    o.require(mismatches == 0, "served set equals oracle");
    o.detail << "1000 trials, " << mismatches << " mismatches ";
  });

  criterion("prefix_cache_accounting", 0, [](Outcome& o) {
    fw::Rng rng(3);
    std::size_t bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const std::size_t p = rng.index(4096), s = rng.index(256), n = 1 + rng.index(64);
      std::vector<fw::CandidateTokens> c(n, {s, 1});
      fw::CostModel on, off;
      off.cache_enabled = false;
      bad += fw::plan_batch(p, c, fw::Formulation::kPointwise, on).billed_prefill_tokens() !=
             p + n * s;
      bad += fw::plan_batch(p, c, fw::Formulation::kPointwise, off).billed_prefill_tokens() !=
             n * (p + s);
    }
    o.require(bad == 0, "exact closed forms");
    o.detail << "10000 random (P, S, n), " << bad << " mismatches ";
  });

  criterion("latency_ratio", 30.0, [](Outcome& o) {
    const auto& s = default_stack();
    std::vector<fw::BenchQuery> workload;
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto& q = s.corpus->queries[i % s.corpus->queries.size()];
      workload.push_back({q.text, q.member});
    }
    std::vector<fw::Formulation> both = {fw::Formulation::kPointwise, fw::Formulation::kListwise};
    const auto report = fw::run_bench(workload, *s.service, both);
    std::size_t full = 0;
    for (const auto& r : report.records) full += r.candidates == 27;
    const double ratio = report.p95_ratio();
    o.require(ratio >= 3.0 && ratio <= 4.0, "listwise/pointwise P95 in [3, 4]");
    o.detail << "P95 pointwise " << report.results.at(fw::Formulation::kPointwise).stats.p95
             << ", listwise " << report.results.at(fw::Formulation::kListwise).stats.p95
             << ", ratio " << ratio << ", 27-candidate requests " << full << "/"
             << report.records.size() << " ";
  });

  criterion("end_to_end_quality", 0, [](Outcome& o) {
    const auto& s = default_stack();
    const auto report = fw::run_offline_eval(s);
    o.require(report.precision_at_5 >= 0.9, "precision_at_5 >= 0.9");
    // The synthetic job counts make the liquidity gate a relevance filter of
    // its own; require the bar with the gate off too.
    fw::ServingDeps deps = s.service->deps();
    deps.liquidity_threshold = 0;
    const fw::SuggestionService ungated(deps);
    const fw::ParametricScorer scorer(s.served_params);
    const auto raw = fw::run_offline_eval(ungated, scorer, *s.corpus, "ungated");
    o.require(raw.precision_at_5 >= 0.9, "precision_at_5 >= 0.9 without liquidity gate");
    o.detail << "precision@5 " << report.precision_at_5 << " (ungated " << raw.precision_at_5
             << ", f1 " << report.f1 << "); recall@27 ";
    for (std::uint64_t seed : {2026, 2027, 2028}) {
      const auto corpus = fw::generate_corpus(seed);
      const auto train = corpus.train_examples();
      const auto held = corpus.held_out_queries();
      double recall[2];
      for (int b = 0; b < 2; ++b) {
        fw::EncoderTrainConfig cfg;
        cfg.objective = b ? fw::EncoderObjective::kBinaryCrossEntropy
                          : fw::EncoderObjective::kInfoNCE;
        fw::SiameseEncoder enc(
            std::make_shared<const fw::EncoderParams>(fw::train_encoder(train, cfg)));
        const auto index = fw::build_index(corpus.taxonomy, enc);
        recall[b] = fw::oracle_recall(corpus, enc, index, held);
      }
      o.require(recall[0] > recall[1], "InfoNCE beats BCE at seed " + std::to_string(seed));
      o.detail << "seed " << seed << " " << recall[0] << " vs " << recall[1] << "; ";
    }
  });

  criterion("cohens_kappa", 0, [](Outcome& o) {
    using fw::Label;
    std::vector<Label> a = {Label::kOkay, Label::kOkay, Label::kPoor, Label::kPoor};
    std::vector<Label> b = {Label::kOkay, Label::kPoor, Label::kPoor, Label::kPoor};
    const double hand = fw::cohens_kappa(a, b);
    o.require(hand == 0.5, "hand case is exactly 0.5");
    o.require(fw::cohens_kappa(a, a) == 1.0, "kappa(a, a) = 1");
    fw::Rng rng(10000);
    std::vector<Label> x, y;
    for (int i = 0; i < 10000; ++i) {
      x.push_back(rng.bernoulli(0.4) ? Label::kOkay : Label::kPoor);
      y.push_back(rng.bernoulli(0.4) ? Label::kOkay : Label::kPoor);
    }
    const double indep = fw::cohens_kappa(x, y);
    o.require(std::abs(indep) <= 0.05, "independent labels within 0 +/- 0.05");
    o.detail << "hand " << hand << ", independent n=10000 " << indep << " ";
  });

  criterion("monotonic_precision", 0, [](Outcome& o) {
    const auto& s = default_stack();
    const auto& keywords = s.corpus->taxonomy.keywords();
    fw::Rng rng(13);
    std::size_t steps = 0, broken = 0, dup_checks = 0, dup_missed = 0;
    for (int chain = 0; chain < 1000; ++chain) {
      const auto& start = s.corpus->queries[rng.index(s.corpus->queries.size())].text;
      auto q = fw::RefinedQuery::from_text(start);
      std::vector<std::string> seen = {q.text};
      const std::size_t len = 1 + rng.index(6);
      while (q.appended_facets.size() < len) {
        const auto& k = keywords[rng.index(keywords.size())];
        if (q.has(k.canonical_name)) continue;
        q = fw::apply_facet(q, {k.facet_type, k.canonical_name});
        ++steps;
        for (const auto& prev : seen) broken += !fw::token_multiset_contains(q.text, prev);
        seen.push_back(q.text);
        const auto& again = q.appended_facets[rng.index(q.appended_facets.size())];
        ++dup_checks;
        try {
          fw::apply_facet(q, again);
          ++dup_missed;
        } catch (const fw::DuplicateFacetError&) {
        }
      }
    }
    o.require(broken == 0, "containment at every step");
    o.require(dup_missed == 0, "duplicate application always errors");
    o.detail << "1000 chains, " << steps << " steps, " << broken << " violations, "
             << dup_checks << " duplicate attempts, " << dup_missed << " accepted ";
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
