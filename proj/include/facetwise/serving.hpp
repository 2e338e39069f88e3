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

// Online suggestion path: encode, quota retrieval, batched pointwise scoring,
// gating, and a liquidity re-check, costed with a token-level execution model
// that bills a shared prompt prefix once per batch when caching is on.

#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "facetwise/common.hpp"
#include "facetwise/ranker.hpp"
#include "facetwise/retrieval.hpp"
#include "facetwise/taxonomy.hpp"

namespace facetwise {

// ---------------------------------------------------------------------------
// Cost model and execution plans
// ---------------------------------------------------------------------------

// Abstract time units. Defaults are calibrated against the synthetic stack.
struct CostModel {
  double prefill_cost_per_token = 0.05;
  double decode_cost_per_token = 3.5;
  double fixed_overhead_per_request = 20.0;
  bool cache_enabled = true;

  void validate() const {
    if (prefill_cost_per_token < 0 || decode_cost_per_token < 0 ||
        fixed_overhead_per_request < 0) {
      throw ValidationError("cost model values must be >= 0");
    }
  }
};

enum class Formulation { kPointwise, kListwise };

inline std::string_view to_string(Formulation f) {
  return f == Formulation::kPointwise ? "pointwise" : "listwise";
}

struct CandidateTokens {
  std::size_t suffix_tokens = 0;  // candidate-specific prompt tail
  std::size_t name_tokens = 0;    // emitted when generated in a list
};

struct ExecutionPlan {
  Formulation formulation = Formulation::kPointwise;
  bool cache_enabled = true;
  std::size_t shared_prefix_tokens = 0;
  std::vector<std::size_t> per_candidate_suffix_tokens;
  // Pointwise: one entry per candidate, each 1. Listwise: a single entry.
  std::vector<std::size_t> generated_tokens;

  std::size_t candidates() const { return per_candidate_suffix_tokens.size(); }

  std::size_t suffix_total() const {
    std::size_t s = 0;
    for (auto t : per_candidate_suffix_tokens) s += t;
    return s;
  }

  std::size_t billed_prefill_tokens() const {
    if (formulation == Formulation::kListwise || cache_enabled) {
      return shared_prefix_tokens + suffix_total();
    }
    return candidates() * shared_prefix_tokens + suffix_total();
  }

  // Pointwise requests decode their single token in parallel.
  std::size_t sequential_decode_tokens() const {
    if (formulation == Formulation::kListwise) return generated_tokens.at(0);
    return candidates() ? 1 : 0;
  }
};

inline ExecutionPlan plan_batch(std::size_t query_prompt_tokens,
                                std::span<const CandidateTokens> candidates,
                                Formulation formulation, const CostModel& cm) {
  if (candidates.empty()) throw ValidationError("plan_batch: no candidates");
  ExecutionPlan plan;
  plan.formulation = formulation;
  plan.cache_enabled = cm.cache_enabled;
  plan.shared_prefix_tokens = query_prompt_tokens;
  std::size_t generated = 0;
  for (const auto& c : candidates) {
    plan.per_candidate_suffix_tokens.push_back(c.suffix_tokens);
    generated += c.name_tokens;
  }
  if (formulation == Formulation::kPointwise) {
    plan.generated_tokens.assign(candidates.size(), 1);
  } else {
    plan.generated_tokens = {generated};
  }
  return plan;
}

inline double simulate_cost(const ExecutionPlan& plan, const CostModel& cm) {
  cm.validate();
  return cm.fixed_overhead_per_request +
         cm.prefill_cost_per_token * static_cast<double>(plan.billed_prefill_tokens()) +
         cm.decode_cost_per_token * static_cast<double>(plan.sequential_decode_tokens());
}

// Token counts of the scoring prompt. The prefix holds the instructions,
// member context and query; each candidate adds its name and definition.
struct PromptTemplate {
  std::size_t instruction_tokens = 420;
  std::size_t per_candidate_overhead = 6;

  std::size_t prefix_tokens(std::string_view query, const OptionalMember& m) const {
    return instruction_tokens + word_count(query) +
           (m ? word_count(serialize_member(*m)) : 0);
  }
  CandidateTokens candidate(const FacetKeyword& k) const {
    return {per_candidate_overhead + word_count(k.canonical_name) +
                word_count(k.definition),
            token_length(k)};
  }
};

// ---------------------------------------------------------------------------
// Refinement state
// ---------------------------------------------------------------------------

struct FacetValue {
  FacetType facet_type = FacetType::kDomainKnowledge;
  std::string value;

  bool operator==(const FacetValue&) const = default;
};

// Re-applying a value already in the refinement.
class DuplicateFacetError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct RefinedQuery {
  std::string base;
  std::vector<FacetValue> appended_facets;
  std::string text;

  static RefinedQuery from_text(std::string base) {
    RefinedQuery r;
    r.text = base;
    r.base = std::move(base);
    return r;
  }

  bool has(std::string_view value) const {
    const auto n = normalize(value);
    for (const auto& f : appended_facets) {
      if (normalize(f.value) == n) return true;
    }
    return false;
  }

  bool operator==(const RefinedQuery&) const = default;
};

inline RefinedQuery apply_facet(RefinedQuery q, const FacetValue& facet) {
  if (normalize(facet.value).empty()) {
    throw ValidationError("apply_facet: empty facet value");
  }
  if (q.has(facet.value)) {
    throw DuplicateFacetError("facet '" + facet.value + "' is already applied");
  }
  q.text += " " + facet.value;
  q.appended_facets.push_back(facet);
  return q;
}

inline RefinedQuery apply_facet(std::string_view raw, const FacetValue& facet) {
  return apply_facet(RefinedQuery::from_text(std::string(raw)), facet);
}

inline void to_json(json& j, const FacetValue& f) {
  j = json{{"facet_type", f.facet_type}, {"value", f.value}};
}
inline void from_json(const json& j, FacetValue& f) {
  f.facet_type = j.at("facet_type").get<FacetType>();
  f.value = j.at("value").get<std::string>();
}

inline void to_json(json& j, const RefinedQuery& q) {
  j = json{{"base", q.base}, {"appended_facets", q.appended_facets}, {"text", q.text}};
}

// ---------------------------------------------------------------------------
// Service
// ---------------------------------------------------------------------------

struct Suggestion {
  FacetType facet_type = FacetType::kDomainKnowledge;
  std::string value;
  KeywordId keyword_id;
  double p_yes = 0;
  double retrieval_similarity = 0;
  std::int64_t job_count = 0;

  FacetValue facet() const { return {facet_type, value}; }
};

struct StageTimings {
  double retrieval_ms = 0;
  double scoring_ms = 0;
  double gating_ms = 0;
};

struct SuggestionResponse {
  std::string query;  // refined text the suggestions apply to
  std::vector<Suggestion> suggestions;
  std::vector<ScoredCandidate> retrieved;
  StageTimings timing;
  ExecutionPlan plan;
  double cost_units = 0;
};

inline void to_json(json& j, const Suggestion& s) {
  j = json{{"facet_type", s.facet_type},
           {"value", s.value},
           {"keyword_id", s.keyword_id},
           {"p_yes", s.p_yes},
           {"retrieval_similarity", s.retrieval_similarity},
           {"job_count", s.job_count}};
}

inline json to_json(const SuggestionResponse& r) {
  return json{{"query", r.query},
              {"suggestions", r.suggestions},
              {"retrieved", r.retrieved.size()},
              {"timing",
               {{"retrieval_ms", r.timing.retrieval_ms},
                {"scoring_ms", r.timing.scoring_ms},
                {"gating_ms", r.timing.gating_ms}}},
              {"cost",
               {{"units", r.cost_units},
                {"billed_prefill_tokens", r.plan.billed_prefill_tokens()},
                {"decode_tokens", r.plan.sequential_decode_tokens()}}}};
}

struct ServingDeps {
  std::shared_ptr<const Taxonomy> taxonomy;
  std::shared_ptr<const SiameseEncoder> encoder;
  std::shared_ptr<const FacetIndex> index;
  std::shared_ptr<const Scorer> scorer;
  std::shared_ptr<const JobCountProvider> jobs;
  CostModel cost;
  PromptTemplate prompt;
  QuotaConfig quotas;
  std::int64_t liquidity_threshold = CurationConfig{}.liquidity_threshold;
};

class SuggestionService {
 public:
  explicit SuggestionService(ServingDeps deps) : deps_(std::move(deps)) {
    if (!deps_.taxonomy || !deps_.encoder || !deps_.index || !deps_.scorer ||
        !deps_.jobs) {
      throw ValidationError("suggestion service dependencies are incomplete");
    }
    deps_.cost.validate();
  }

  const ServingDeps& deps() const { return deps_; }

  RefinedQuery refine(std::string_view query,
                      std::span<const FacetValue> applied) const {
    if (normalize(query).empty()) throw ValidationError("query is empty");
    auto r = RefinedQuery::from_text(std::string(query));
    for (const auto& f : applied) r = apply_facet(std::move(r), f);
    return r;
  }

  // Quota candidates for the refined text, minus values already applied.
  std::vector<ScoredCandidate> retrieve(const RefinedQuery& q,
                                        const OptionalMember& member) const {
    try {
      auto emb = deps_.encoder->encode_query(q.text, member);
      auto cands = retrieve_with_quotas(emb, *deps_.index, deps_.quotas);
      std::erase_if(cands, [&](const ScoredCandidate& c) {
        return q.has(c.keyword.canonical_name);
      });
      return cands;
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError("retrieval", e.what());
    }
  }

  ExecutionPlan plan(const RefinedQuery& q, const OptionalMember& member,
                     std::span<const ScoredCandidate> cands,
                     Formulation formulation) const {
    std::vector<CandidateTokens> tokens;
    for (const auto& c : cands) tokens.push_back(deps_.prompt.candidate(c.keyword));
    if (tokens.empty()) tokens.push_back({0, 0});
    return plan_batch(deps_.prompt.prefix_tokens(q.text, member), tokens,
                      formulation, deps_.cost);
  }

  SuggestionResponse suggest(std::string_view query, const OptionalMember& member,
                             std::span<const FacetValue> applied = {}) const {
    using Clock = std::chrono::steady_clock;
    auto ms = [](Clock::time_point a, Clock::time_point b) {
      return std::chrono::duration<double, std::milli>(b - a).count();
    };
    SuggestionResponse resp;
    const auto refined = refine(query, applied);
    resp.query = refined.text;

    auto t0 = Clock::now();
    resp.retrieved = retrieve(refined, member);
    auto t1 = Clock::now();
    resp.timing.retrieval_ms = ms(t0, t1);

    resp.plan = plan(refined, member, resp.retrieved, Formulation::kPointwise);
    resp.cost_units = simulate_cost(resp.plan, deps_.cost);
    std::vector<ScoredCandidate> scored;
    try {
      scored = score_candidates(refined.text, member, resp.retrieved, *deps_.scorer);
    } catch (const std::exception& e) {
      throw StageError("scoring", e.what());
    }
    auto t2 = Clock::now();
    resp.timing.scoring_ms = ms(t1, t2);

    for (auto& c : rank_and_gate(std::move(scored))) {
      std::int64_t jobs = 0;
      try {
        jobs = deps_.jobs->job_count(expanded_query(refined.text, c.keyword));
      } catch (const std::exception& e) {
        throw StageError("liquidity", e.what(), true);
      }
      if (jobs < deps_.liquidity_threshold) continue;
      resp.suggestions.push_back({c.keyword.facet_type, c.keyword.canonical_name,
                                  c.keyword.id, *c.p_yes, c.retrieval_similarity,
                                  jobs});
    }
    resp.timing.gating_ms = ms(t2, Clock::now());
    return resp;
  }

 private:
  ServingDeps deps_;
};

// ---------------------------------------------------------------------------
// Benchmark
// ---------------------------------------------------------------------------

struct LatencyStats {
  double p50 = 0;
  double p95 = 0;
  double mean = 0;
  std::size_t samples = 0;
};

// Nearest-rank percentile: the ceil(p/100 * n)-th smallest sample.
inline double percentile(std::vector<double> xs, double pct) {
  if (xs.empty()) throw ValidationError("percentile of an empty sample");
  std::sort(xs.begin(), xs.end());
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * xs.size()));
  rank = std::clamp<std::size_t>(rank, 1, xs.size());
  return xs[rank - 1];
}

inline LatencyStats latency_stats(const std::vector<double>& xs) {
  LatencyStats s;
  s.samples = xs.size();
  s.p50 = percentile(xs, 50);
  s.p95 = percentile(xs, 95);
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / xs.size();
  return s;
}

inline json to_json(const LatencyStats& s) {
  return json{{"p50", s.p50}, {"p95", s.p95}, {"mean", s.mean},
              {"samples", s.samples}};
}

struct BenchQuery {
  std::string query;
  OptionalMember member;
};

struct BenchRecord {
  std::string query;
  Formulation formulation;
  std::size_t candidates = 0;
  std::size_t billed_prefill_tokens = 0;
  std::size_t decode_tokens = 0;
  double cost_units = 0;
  double wall_ms = 0;
};

struct BenchResult {
  LatencyStats stats;
  double wall_p50_ms = 0;
  double wall_p95_ms = 0;
};

struct BenchReport {
  std::map<Formulation, BenchResult> results;
  std::vector<BenchRecord> records;

  double p95_ratio() const {
    return results.at(Formulation::kListwise).stats.p95 /
           results.at(Formulation::kPointwise).stats.p95;
  }
};

// Runs every workload query through each formulation. Pointwise goes through
// suggest(); listwise retrieves the same candidates and scores them as one
// generated list.
inline BenchReport run_bench(std::span<const BenchQuery> workload,
                             const SuggestionService& service,
                             std::span<const Formulation> formulations) {
  if (workload.empty()) throw ValidationError("run_bench: empty workload");
  using Clock = std::chrono::steady_clock;
  BenchReport report;
  for (auto f : formulations) {
    std::vector<double> cost, wall;
    for (const auto& w : workload) {
      auto t0 = Clock::now();
      BenchRecord rec{w.query, f};
      ExecutionPlan plan;
      if (f == Formulation::kPointwise) {
        auto resp = service.suggest(w.query, w.member);
        plan = resp.plan;
      } else {
        auto refined = service.refine(w.query, {});
        auto cands = service.retrieve(refined, w.member);
        plan = service.plan(refined, w.member, cands, f);
        if (!cands.empty()) {
          score_listwise(refined.text, w.member, std::move(cands),
                         *service.deps().scorer);
        }
      }
      rec.candidates = plan.candidates();
      rec.billed_prefill_tokens = plan.billed_prefill_tokens();
      rec.decode_tokens = plan.sequential_decode_tokens();
      rec.cost_units = simulate_cost(plan, service.deps().cost);
      rec.wall_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      cost.push_back(rec.cost_units);
      wall.push_back(rec.wall_ms);
      report.records.push_back(std::move(rec));
    }
    report.results[f] = {latency_stats(cost), percentile(wall, 50),
                         percentile(wall, 95)};
  }
  return report;
}

// One line per query and formulation, then one summary line per formulation.
inline void write_bench_report(const BenchReport& r, const std::string& path) {
  std::vector<json> lines;
  for (const auto& rec : r.records) {
    lines.push_back({{"kind", "query"},
                     {"query", rec.query},
                     {"formulation", to_string(rec.formulation)},
                     {"candidates", rec.candidates},
                     {"billed_prefill_tokens", rec.billed_prefill_tokens},
                     {"decode_tokens", rec.decode_tokens},
                     {"cost_units", rec.cost_units},
                     {"wall_ms", rec.wall_ms}});
  }
  for (const auto& [f, res] : r.results) {
    lines.push_back({{"kind", "summary"},
                     {"formulation", to_string(f)},
                     {"cost_units", to_json(res.stats)},
                     {"wall_p50_ms", res.wall_p50_ms},
                     {"wall_p95_ms", res.wall_p95_ms}});
  }
  write_lines(path, lines);
}

}  // namespace facetwise
