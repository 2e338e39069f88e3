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

// Synthetic corpus, offline metrics, the end-to-end stack builder and the
// offline evaluation harness.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "facetwise/common.hpp"
#include "facetwise/judge.hpp"
#include "facetwise/ontology.hpp"
#include "facetwise/ontology_data.hpp"
#include "facetwise/oracle_judge.hpp"
#include "facetwise/random.hpp"
#include "facetwise/ranker.hpp"
#include "facetwise/retrieval.hpp"
#include "facetwise/serving.hpp"

namespace facetwise {

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

struct CorpusSizes {
  OntologySizes ontology;
  std::size_t queries_per_occupation = 24;
  std::size_t pairs_per_query = 10;
  double positive_rate = 0.3;
  // Query shape.
  double modifier_rate = 0.3;
  double redundant_rate = 0.15;
  // Member attachment: none, an affine member of the query's occupation, or
  // an arbitrary member.
  double member_rate = 0.7;
  double affine_member_rate = 0.7;
  // Share of negatives drawn from the hard pool (linked but failing C2/C3,
  // or linked to a same-family occupation).
  double hard_negative_rate = 0.5;
  double held_out_rate = 0.2;
};

struct CorpusQuery {
  std::string text;
  OptionalMember member;
  std::string occupation_id;
  bool held_out = false;
};

struct CorpusStats {
  double planted_positive_rate = 0;
  double observed_positive_rate = 0;
  std::size_t examples = 0;
  std::size_t queries = 0;
  std::size_t held_out_queries = 0;
};

struct Corpus {
  std::uint64_t seed = 0;
  SyntheticOntology ontology;
  Taxonomy taxonomy;
  std::vector<CorpusQuery> queries;
  std::vector<LabeledExample> examples;
  std::vector<std::size_t> example_query;  // index into queries
  CorpusStats stats;

  std::vector<LabeledExample> split(bool held_out) const {
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      if (queries[example_query[i]].held_out == held_out) out.push_back(examples[i]);
    }
    return out;
  }
  std::vector<LabeledExample> train_examples() const { return split(false); }
  std::vector<LabeledExample> held_out_examples() const { return split(true); }

  std::vector<CorpusQuery> held_out_queries() const {
    std::vector<CorpusQuery> out;
    for (const auto& q : queries) {
      if (q.held_out) out.push_back(q);
    }
    return out;
  }
};

namespace detail {

inline std::string make_query_text(const SyntheticOntology& o, const Occupation& occ,
                                   const CorpusSizes& sizes, Rng& rng) {
  std::string text = occ.title;
  if (rng.bernoulli(sizes.modifier_rate)) {
    const auto& mods = ontology_data::query_modifiers();
    text = std::string(mods[rng.index(mods.size())]) + " " + text;
  }
  if (rng.bernoulli(sizes.redundant_rate)) {
    const auto& l = occ.links[rng.index(occ.links.size())];
    text += " " + o.facet(l.facet)->name;
  }
  return text;
}

inline OptionalMember pick_member(const SyntheticOntology& o, std::size_t occ_index,
                                  const CorpusSizes& sizes, Rng& rng) {
  const auto& members = o.members();
  if (members.empty() || !rng.bernoulli(sizes.member_rate)) return std::nullopt;
  const std::size_t n = o.occupations().size();
  if (rng.bernoulli(sizes.affine_member_rate)) {
    std::vector<std::size_t> own;
    for (std::size_t m = occ_index; m < members.size(); m += n) own.push_back(m);
    if (!own.empty()) return members[own[rng.index(own.size())]];
  }
  return members[rng.index(members.size())];
}

}  // namespace detail

// Generates the ontology, a validated taxonomy over all its facets, queries
// and an oracle-labeled pair set with exactly round(positive_rate * pairs)
// positives per query.
inline Corpus generate_corpus(std::uint64_t seed, const CorpusSizes& sizes = {},
                              const QuotaConfig& quotas = {}) {
  if (sizes.pairs_per_query == 0 || sizes.queries_per_occupation == 0) {
    throw ValidationError("corpus sizes must be positive");
  }
  if (!(sizes.positive_rate >= 0 && sizes.positive_rate <= 1)) {
    throw ValidationError("positive_rate must be in [0, 1]");
  }
  Corpus c;
  c.seed = seed;
  c.ontology = generate_ontology(seed, sizes.ontology, quotas);
  c.taxonomy = c.ontology.taxonomy(KeywordStatus::kValidated);
  OracleJudge judge(c.ontology);
  Rng rng(seed ^ 0x5bd1e995ULL);

  const auto n_pos = static_cast<std::size_t>(
      std::llround(sizes.positive_rate * sizes.pairs_per_query));
  const std::size_t n_neg = sizes.pairs_per_query - n_pos;
  const auto& occs = c.ontology.occupations();
  const auto& keywords = c.taxonomy.keywords();

  for (std::size_t oi = 0; oi < occs.size(); ++oi) {
    const auto& occ = occs[oi];
    std::set<std::pair<std::string, std::string>> seen;
    std::size_t made = 0, attempts = 0;
    while (made < sizes.queries_per_occupation) {
      if (++attempts > 50 * sizes.queries_per_occupation) {
        throw ValidationError(occ.id + ": cannot fill the query quota");
      }
      CorpusQuery q{detail::make_query_text(c.ontology, occ, sizes, rng),
                    detail::pick_member(c.ontology, oi, sizes, rng), occ.id, false};
      auto key = std::pair{q.text, q.member ? serialize_member(*q.member) : ""};
      if (!seen.insert(key).second) continue;

      std::vector<std::size_t> pos, hard, easy;
      std::vector<JudgeVerdict> verdicts(keywords.size());
      for (std::size_t k = 0; k < keywords.size(); ++k) {
        verdicts[k] = judge.evaluate(q.text, q.member, keywords[k]);
        if (verdicts[k].label == Label::kOkay) {
          pos.push_back(k);
          continue;
        }
        const auto* f = c.ontology.facet(keywords[k].id);
        bool is_hard = c.ontology.linked(occ, f->id);
        for (const auto& other : occs) {
          if (is_hard) break;
          is_hard = other.family == occ.family && other.id != occ.id &&
                    c.ontology.linked(other, f->id);
        }
        (is_hard ? hard : easy).push_back(k);
      }
      if (pos.size() < n_pos || hard.size() + easy.size() < n_neg) continue;

      std::size_t n_hard = std::min(
          hard.size(),
          static_cast<std::size_t>(std::llround(sizes.hard_negative_rate * n_neg)));
      std::size_t n_easy = std::min(easy.size(), n_neg - n_hard);
      n_hard = n_neg - n_easy;
      std::vector<std::size_t> picked = rng.sample(pos, n_pos);
      for (auto k : rng.sample(hard, n_hard)) picked.push_back(k);
      for (auto k : rng.sample(easy, n_easy)) picked.push_back(k);

      const std::size_t qi = c.queries.size();
      for (auto k : picked) {
        c.examples.push_back({q.text, q.member, keywords[k], verdicts[k]});
        c.example_query.push_back(qi);
      }
      c.queries.push_back(std::move(q));
      ++made;
    }
  }

  std::vector<std::size_t> order(c.queries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  const auto n_held = static_cast<std::size_t>(
      std::llround(sizes.held_out_rate * c.queries.size()));
  for (std::size_t i = 0; i < n_held; ++i) c.queries[order[i]].held_out = true;

  std::size_t positives = 0;
  for (const auto& e : c.examples) positives += e.verdict.label == Label::kOkay;
  c.stats.planted_positive_rate =
      static_cast<double>(n_pos) / static_cast<double>(sizes.pairs_per_query);
  c.stats.examples = c.examples.size();
  c.stats.observed_positive_rate =
      static_cast<double>(positives) / static_cast<double>(c.examples.size());
  c.stats.queries = c.queries.size();
  c.stats.held_out_queries = n_held;
  return c;
}

inline json to_json(const CorpusQuery& q) {
  return json{{"text", q.text},
              {"member", member_to_json(q.member)},
              {"occupation_id", q.occupation_id},
              {"held_out", q.held_out}};
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

// |relevant in top-k| / |top-k|; the denominator is the number served when
// fewer than k were served.
template <typename T, typename Pred>
double precision_at_k(std::span<const T> served, Pred relevant, std::size_t k = 5) {
  if (k == 0) throw ValidationError("precision_at_k: k must be >= 1");
  if (served.empty()) throw ValidationError("precision_at_k: nothing served");
  const std::size_t n = std::min(k, served.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += relevant(served[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(n);
}

enum class Prediction { kYes, kNo };

// F1 of the Yes/Okay class; 0 when precision + recall is 0.
inline double f1_score(std::span<const Prediction> predictions,
                       std::span<const Label> labels) {
  if (predictions.size() != labels.size()) {
    throw ValidationError("f1_score: predictions and labels differ in length");
  }
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool yes = predictions[i] == Prediction::kYes;
    const bool okay = labels[i] == Label::kOkay;
    tp += yes && okay;
    fp += yes && !okay;
    fn += !yes && okay;
  }
  if (tp == 0) return 0.0;
  const double p = static_cast<double>(tp) / (tp + fp);
  const double r = static_cast<double>(tp) / (tp + fn);
  return 2 * p * r / (p + r);
}

// Share of the query's oracle-positive keywords that quota retrieval returns.
// Queries with no positive keyword are skipped.
inline double oracle_recall(const Corpus& corpus, const SiameseEncoder& encoder,
                            const FacetIndex& index,
                            std::span<const CorpusQuery> queries,
                            const QuotaConfig& quotas = {}) {
  OracleJudge judge(corpus.ontology);
  double total = 0;
  std::size_t counted = 0;
  for (const auto& q : queries) {
    std::set<KeywordId> positives;
    for (const auto& e : index.entries()) {
      if (judge.evaluate(q.text, q.member, e.keyword).label == Label::kOkay) {
        positives.insert(e.keyword.id);
      }
    }
    if (positives.empty()) continue;
    auto got = retrieve_with_quotas(encoder.encode_query(q.text, q.member), index, quotas);
    std::size_t hit = 0;
    for (const auto& c : got) hit += positives.count(c.keyword.id);
    total += static_cast<double>(hit) / positives.size();
    ++counted;
  }
  if (!counted) throw ValidationError("oracle_recall: no query has positives");
  return total / counted;
}

// ---------------------------------------------------------------------------
// Stack
// ---------------------------------------------------------------------------

enum class ServedScorer { kSupervised, kDistilled, kCompact };

inline std::string_view to_string(ServedScorer s) {
  switch (s) {
    case ServedScorer::kSupervised: return "supervised";
    case ServedScorer::kDistilled: return "distilled";
    case ServedScorer::kCompact: return "compact";
  }
  return "?";
}

inline std::optional<ServedScorer> parse_served_scorer(std::string_view s) {
  for (auto v : {ServedScorer::kSupervised, ServedScorer::kDistilled,
                 ServedScorer::kCompact}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

struct StackConfig {
  std::uint64_t seed = 2026;
  CorpusSizes corpus;
  EncoderTrainConfig encoder;
  SupervisedConfig supervised;
  DistillConfig distill;
  CostModel cost;
  PromptTemplate prompt;
  QuotaConfig quotas;
  ServedScorer served = ServedScorer::kCompact;
  // When false, only the served scorer's own stage(s) run.
  bool train_all_stages = false;
};

inline json to_json(const StackConfig& c) {
  const auto& o = c.corpus.ontology;
  return json{
      {"seed", c.seed},
      {"corpus",
       {{"occupations", o.occupations},
        {"facets", {o.domain_knowledge, o.functions, o.industries, o.workplace_types}},
        {"members", o.members},
        {"title_overlap", o.title_overlap},
        {"queries_per_occupation", c.corpus.queries_per_occupation},
        {"pairs_per_query", c.corpus.pairs_per_query},
        {"positive_rate", c.corpus.positive_rate},
        {"held_out_rate", c.corpus.held_out_rate}}},
      {"encoder",
       {{"objective", c.encoder.objective == EncoderObjective::kInfoNCE ? "infonce" : "bce"},
        {"tau", c.encoder.tau},
        {"learning_rate", c.encoder.learning_rate},
        {"epochs", c.encoder.epochs},
        {"batch_size", c.encoder.batch_size},
        {"seed", c.encoder.seed},
        {"feature_dim", c.encoder.feature_dim},
        {"embed_dim", c.encoder.embed_dim}}},
      {"supervised",
       {{"epochs", c.supervised.epochs},
        {"learning_rate", c.supervised.learning_rate},
        {"batch_size", c.supervised.batch_size},
        {"seed", c.supervised.seed}}},
      {"distill",
       {{"steps", c.distill.steps},
        {"trajectory_length", c.distill.trajectory_length},
        {"samples_per_input", c.distill.samples_per_input},
        {"batch_size", c.distill.batch_size},
        {"learning_rate", c.distill.learning_rate},
        {"seed", c.distill.seed}}},
      {"cost",
       {{"prefill", c.cost.prefill_cost_per_token},
        {"decode", c.cost.decode_cost_per_token},
        {"overhead", c.cost.fixed_overhead_per_request},
        {"cache", c.cost.cache_enabled}}},
      {"prompt",
       {{"instruction_tokens", c.prompt.instruction_tokens},
        {"per_candidate_overhead", c.prompt.per_candidate_overhead}}},
      {"quotas", c.quotas.counts},
      {"served", to_string(c.served)}};
}

// Reads the subset of StackConfig fields present in `j`.
inline StackConfig stack_config_from_json(const json& j) {
  StackConfig c;
  auto get = [](const json& obj, const char* key, auto& out) {
    if (obj.contains(key)) obj.at(key).get_to(out);
  };
  get(j, "seed", c.seed);
  if (j.contains("corpus")) {
    const auto& cj = j["corpus"];
    get(cj, "occupations", c.corpus.ontology.occupations);
    get(cj, "members", c.corpus.ontology.members);
    get(cj, "title_overlap", c.corpus.ontology.title_overlap);
    get(cj, "queries_per_occupation", c.corpus.queries_per_occupation);
    get(cj, "pairs_per_query", c.corpus.pairs_per_query);
    get(cj, "positive_rate", c.corpus.positive_rate);
    get(cj, "held_out_rate", c.corpus.held_out_rate);
    if (cj.contains("facets")) {
      auto f = cj["facets"].get<std::vector<std::size_t>>();
      if (f.size() != 4) throw ValidationError("corpus.facets needs 4 counts");
      c.corpus.ontology.domain_knowledge = f[0];
      c.corpus.ontology.functions = f[1];
      c.corpus.ontology.industries = f[2];
      c.corpus.ontology.workplace_types = f[3];
    }
  }
  if (j.contains("encoder")) {
    const auto& e = j["encoder"];
    if (e.contains("objective")) {
      auto o = e["objective"].get<std::string>();
      if (o == "infonce") {
        c.encoder.objective = EncoderObjective::kInfoNCE;
      } else if (o == "bce") {
        c.encoder.objective = EncoderObjective::kBinaryCrossEntropy;
      } else {
        throw ValidationError("unknown encoder objective " + o);
      }
    }
    get(e, "tau", c.encoder.tau);
    get(e, "learning_rate", c.encoder.learning_rate);
    get(e, "epochs", c.encoder.epochs);
    get(e, "batch_size", c.encoder.batch_size);
    get(e, "seed", c.encoder.seed);
    get(e, "feature_dim", c.encoder.feature_dim);
    get(e, "embed_dim", c.encoder.embed_dim);
  }
  if (j.contains("supervised")) {
    const auto& s = j["supervised"];
    get(s, "epochs", c.supervised.epochs);
    get(s, "learning_rate", c.supervised.learning_rate);
    get(s, "batch_size", c.supervised.batch_size);
    get(s, "seed", c.supervised.seed);
  }
  if (j.contains("distill")) {
    const auto& d = j["distill"];
    get(d, "steps", c.distill.steps);
    get(d, "trajectory_length", c.distill.trajectory_length);
    get(d, "samples_per_input", c.distill.samples_per_input);
    get(d, "batch_size", c.distill.batch_size);
    get(d, "learning_rate", c.distill.learning_rate);
    get(d, "seed", c.distill.seed);
  }
  if (j.contains("cost")) {
    const auto& m = j["cost"];
    get(m, "prefill", c.cost.prefill_cost_per_token);
    get(m, "decode", c.cost.decode_cost_per_token);
    get(m, "overhead", c.cost.fixed_overhead_per_request);
    get(m, "cache", c.cost.cache_enabled);
  }
  if (j.contains("prompt")) {
    get(j["prompt"], "instruction_tokens", c.prompt.instruction_tokens);
    get(j["prompt"], "per_candidate_overhead", c.prompt.per_candidate_overhead);
  }
  if (j.contains("quotas")) c.quotas.counts = j["quotas"].get<std::array<std::size_t, 4>>();
  if (j.contains("served")) {
    auto s = parse_served_scorer(j["served"].get<std::string>());
    if (!s) throw ValidationError("unknown served scorer " + j["served"].dump());
    c.served = *s;
  }
  get(j, "train_all_stages", c.train_all_stages);
  return c;
}

inline std::string config_fingerprint(const StackConfig& c) {
  return hex64(fnv1a(to_json(c).dump()));
}

inline std::vector<ScoringInput> scoring_inputs(std::span<const LabeledExample> xs) {
  std::vector<ScoringInput> out;
  out.reserve(xs.size());
  for (const auto& e : xs) out.push_back({e.query, e.member, e.keyword});
  return out;
}

// Trained components over one corpus. Shared pointers make the parts safe to
// hand to a service and to HTTP handlers.
struct Stack {
  StackConfig config;
  std::shared_ptr<const Corpus> corpus;
  std::shared_ptr<const EncoderParams> encoder_params;
  std::shared_ptr<const SiameseEncoder> encoder;
  std::shared_ptr<const FacetIndex> index;
  std::optional<ScorerParams> supervised;
  std::optional<ScorerParams> distilled;
  std::optional<ScorerParams> compact;
  std::shared_ptr<const ScorerParams> served_params;
  std::shared_ptr<const OntologyJobCounts> jobs;
  std::shared_ptr<const SuggestionService> service;
};

// Wires a service over an existing corpus and trained parameters.
inline std::shared_ptr<const SuggestionService> make_service(
    const std::shared_ptr<const Corpus>& corpus,
    std::shared_ptr<const SiameseEncoder> encoder,
    std::shared_ptr<const FacetIndex> index,
    std::shared_ptr<const Scorer> scorer,
    std::shared_ptr<const JobCountProvider> jobs, const StackConfig& cfg) {
  ServingDeps deps;
  deps.taxonomy = std::shared_ptr<const Taxonomy>(corpus, &corpus->taxonomy);
  deps.encoder = std::move(encoder);
  deps.index = std::move(index);
  deps.scorer = std::move(scorer);
  deps.jobs = std::move(jobs);
  deps.cost = cfg.cost;
  deps.prompt = cfg.prompt;
  deps.quotas = cfg.quotas;
  return std::make_shared<const SuggestionService>(std::move(deps));
}

// Stage 0 labels the corpus with the oracle judge; stage 1 is supervised
// training of the full scorer; stage 2 distills a fresh full-width student
// from it on-policy; stage 3 carries the stage 2 student into the compact
// feature space and fine-tunes it on labels only.
inline Stack build_stack(const StackConfig& cfg) {
  Stack s;
  s.config = cfg;
  std::shared_ptr<const Corpus> corpus;
  try {
    corpus = std::make_shared<const Corpus>(
        generate_corpus(cfg.seed, cfg.corpus, cfg.quotas));
  } catch (const std::exception& e) {
    throw StageError("corpus", e.what());
  }
  s.corpus = corpus;
  const auto train = corpus->train_examples();
  try {
    s.encoder_params =
        std::make_shared<const EncoderParams>(train_encoder(train, cfg.encoder));
    s.encoder = std::make_shared<const SiameseEncoder>(s.encoder_params);
    s.index = std::make_shared<const FacetIndex>(build_index(corpus->taxonomy, *s.encoder));
  } catch (const std::exception& e) {
    throw StageError("encoder", e.what());
  }
  try {
    const bool all = cfg.train_all_stages;
    const auto inputs = scoring_inputs(train);
    s.supervised = train_supervised(
        ScorerParams::random(FeatureMode::kFull, cfg.supervised.seed), train,
        cfg.supervised);
    if (all || cfg.served != ServedScorer::kSupervised) {
      s.distilled = distill_on_policy(
          ScorerParams::random(FeatureMode::kFull, cfg.distill.seed), *s.supervised,
          inputs, cfg.distill);
    }
    if (all || cfg.served == ServedScorer::kCompact) {
      // The stage 2 student cannot be copied across feature widths, so it is
      // first distilled into the compact space and then fine-tuned on labels.
      auto warm = distill_on_policy(
          ScorerParams::random(FeatureMode::kCompact, cfg.distill.seed), *s.distilled,
          inputs, cfg.distill);
      s.compact = train_supervised(std::move(warm), train, cfg.supervised);
    }
  } catch (const std::exception& e) {
    throw StageError("scorer", e.what());
  }
  switch (cfg.served) {
    case ServedScorer::kSupervised:
      s.served_params = std::make_shared<const ScorerParams>(*s.supervised);
      break;
    case ServedScorer::kDistilled:
      s.served_params = std::make_shared<const ScorerParams>(*s.distilled);
      break;
    case ServedScorer::kCompact:
      s.served_params = std::make_shared<const ScorerParams>(*s.compact);
      break;
  }
  s.jobs = std::make_shared<const OntologyJobCounts>(corpus->ontology);
  s.service = make_service(corpus, s.encoder, s.index,
                           std::make_shared<const ParametricScorer>(s.served_params),
                           s.jobs, cfg);
  return s;
}

// ---------------------------------------------------------------------------
// Offline evaluation
// ---------------------------------------------------------------------------

struct TypeBreakdown {
  std::size_t served = 0;
  std::size_t relevant = 0;
  double precision() const {
    return served ? static_cast<double>(relevant) / served : 0.0;
  }
};

struct EvalReport {
  double precision_at_5 = 0;
  double f1 = 0;
  std::array<TypeBreakdown, 4> per_type{};
  std::optional<double> kappa;
  std::size_t queries = 0;
  std::size_t queries_without_suggestions = 0;
  double mean_suggestions = 0;
  double mean_retrieval_ms = 0;
  double mean_scoring_ms = 0;
  double mean_gating_ms = 0;
  std::string fingerprint;

  // Timings are excluded; two runs on the same stack compare equal.
  bool same_metrics(const EvalReport& o) const {
    for (std::size_t t = 0; t < 4; ++t) {
      if (per_type[t].served != o.per_type[t].served ||
          per_type[t].relevant != o.per_type[t].relevant) {
        return false;
      }
    }
    return precision_at_5 == o.precision_at_5 && f1 == o.f1 && kappa == o.kappa &&
           queries == o.queries &&
           queries_without_suggestions == o.queries_without_suggestions &&
           mean_suggestions == o.mean_suggestions && fingerprint == o.fingerprint;
  }
};

inline json to_json(const EvalReport& r) {
  json types = json::object();
  for (auto t : kAllFacetTypes) {
    const auto& b = r.per_type[type_index(t)];
    types[std::string(to_string(t))] = {
        {"served", b.served}, {"relevant", b.relevant}, {"precision", b.precision()}};
  }
  return json{{"precision_at_5", r.precision_at_5},
              {"f1", r.f1},
              {"per_type", types},
              {"kappa", r.kappa ? json(*r.kappa) : json(nullptr)},
              {"queries", r.queries},
              {"queries_without_suggestions", r.queries_without_suggestions},
              {"mean_suggestions", r.mean_suggestions},
              {"timing_ms",
               {{"retrieval", r.mean_retrieval_ms},
                {"scoring", r.mean_scoring_ms},
                {"gating", r.mean_gating_ms}}},
              {"fingerprint", r.fingerprint}};
}

inline std::string summary_table(const EvalReport& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "metric                       value\n"
      << "precision@5                  " << r.precision_at_5 << "\n"
      << "f1 (held-out pairs)          " << r.f1 << "\n";
  if (r.kappa) out << "kappa vs secondary judge     " << *r.kappa << "\n";
  out << "queries                      " << r.queries << "\n"
      << "queries without suggestions  " << r.queries_without_suggestions << "\n";
  for (auto t : kAllFacetTypes) {
    const auto& b = r.per_type[type_index(t)];
    std::string name(to_string(t));
    name.resize(29, ' ');
    out << name << b.precision() << "  (" << b.relevant << "/" << b.served << ")\n";
  }
  out << "fingerprint                  " << r.fingerprint << "\n";
  return out.str();
}

// Serves every held-out query, judges what was served with the oracle, and
// computes F1 of the served scorer's Yes decisions on the held-out pairs.
// With a secondary judge, kappa is measured against the oracle on those pairs.
inline EvalReport run_offline_eval(const SuggestionService& service,
                                   const Scorer& scorer, const Corpus& corpus,
                                   const std::string& fingerprint,
                                   const Judge* secondary = nullptr) {
  OracleJudge judge(corpus.ontology);
  EvalReport r;
  r.fingerprint = fingerprint;
  double precision_sum = 0, n_suggestions = 0;
  std::size_t judged = 0;
  for (const auto& q : corpus.held_out_queries()) {
    ++r.queries;
    auto resp = service.suggest(q.text, q.member);
    r.mean_retrieval_ms += resp.timing.retrieval_ms;
    r.mean_scoring_ms += resp.timing.scoring_ms;
    r.mean_gating_ms += resp.timing.gating_ms;
    n_suggestions += resp.suggestions.size();
    if (resp.suggestions.empty()) {
      ++r.queries_without_suggestions;
      continue;
    }
    auto relevant = [&](const Suggestion& s) {
      const auto* k = corpus.taxonomy.find(s.keyword_id);
      return judge.evaluate(q.text, q.member, *k).label == Label::kOkay;
    };
    std::span<const Suggestion> served(resp.suggestions);
    precision_sum += precision_at_k(served, relevant, kServedTopK);
    ++judged;
    for (const auto& s : resp.suggestions) {
      auto& b = r.per_type[type_index(s.facet_type)];
      ++b.served;
      b.relevant += relevant(s);
    }
  }
  if (r.queries == 0) throw ValidationError("run_offline_eval: no held-out queries");
  r.precision_at_5 = judged ? precision_sum / judged : 0.0;
  r.mean_suggestions = n_suggestions / r.queries;
  r.mean_retrieval_ms /= r.queries;
  r.mean_scoring_ms /= r.queries;
  r.mean_gating_ms /= r.queries;

  const auto held = corpus.held_out_examples();
  std::vector<Prediction> preds;
  std::vector<Label> labels, second;
  for (const auto& e : held) {
    preds.push_back(score_pointwise(e.query, e.member, e.keyword, scorer) > kYesThreshold
                        ? Prediction::kYes
                        : Prediction::kNo);
    labels.push_back(e.verdict.label);
    if (secondary) second.push_back(secondary->evaluate(e.query, e.member, e.keyword).label);
  }
  r.f1 = f1_score(preds, labels);
  if (secondary) r.kappa = cohens_kappa(labels, second);
  return r;
}

inline EvalReport run_offline_eval(const Stack& s, const Judge* secondary = nullptr) {
  ParametricScorer scorer(s.served_params);
  return run_offline_eval(*s.service, scorer, *s.corpus, config_fingerprint(s.config),
                          secondary);
}

// ---------------------------------------------------------------------------
// Micro fixture
// ---------------------------------------------------------------------------

// Names of the ten keywords in the hand-checkable fixture.
inline const std::vector<std::string>& micro_fixture_names() {
  static const std::vector<std::string> names = {
      "Telemetry", "Cardiology", "Healthcare", "Remote", "Nursing",
      "Litigation", "Corporate Law", "Legal Services", "Hybrid", "Legal Research"};
  return names;
}

// The ontology's keywords for the fixture names, as a validated taxonomy.
inline Taxonomy micro_fixture_taxonomy(const SyntheticOntology& o) {
  std::vector<FacetKeyword> ks;
  for (const auto& name : micro_fixture_names()) {
    const OntologyFacet* found = nullptr;
    for (auto t : kAllFacetTypes) {
      if ((found = o.facet_by_name(name, t))) break;
    }
    if (!found) throw ValidationError("fixture keyword missing from ontology: " + name);
    ks.push_back(o.keyword(*found));
  }
  return Taxonomy(std::move(ks));
}

}  // namespace facetwise
