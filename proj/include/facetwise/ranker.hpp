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

// Pointwise relevance scoring. A scorer maps a (query, member, keyword)
// prompt to a distribution over a small output vocabulary; the probability of
// "Yes" is the ranking score. The parametric scorer is a linear softmax model
// over hashed prompt features, trained with cross-entropy on judge labels or
// by on-policy distillation from a teacher scorer.

#pragma once

#include <cmath>
#include <cstring>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "facetwise/common.hpp"
#include "facetwise/judge.hpp"
#include "facetwise/keyword.hpp"
#include "facetwise/random.hpp"
#include "facetwise/retrieval.hpp"

namespace facetwise {

inline constexpr std::string_view kYesToken = "Yes";
inline constexpr std::string_view kNoToken = "No";
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr std::size_t kFullScorerDim = 98304;

inline std::vector<std::string> binary_vocab() {
  return {std::string(kYesToken), std::string(kNoToken)};
}

// ---------------------------------------------------------------------------
// Token distributions
// ---------------------------------------------------------------------------

class TokenDistribution {
 public:
  TokenDistribution() = default;

  // Throws unless probs has one non-negative entry per token summing to 1.
  TokenDistribution(std::vector<std::string> vocab, Vec probs)
      : vocab_(std::move(vocab)), probs_(std::move(probs)) {
    if (vocab_.size() != probs_.size()) {
      throw ValidationError("distribution size does not match vocabulary");
    }
    double s = 0;
    for (double p : probs_) {
      if (!(p >= 0 && p <= 1)) throw ValidationError("probability outside [0, 1]");
      s += p;
    }
    if (std::abs(s - 1) > 1e-9) {
      throw ValidationError("probabilities sum to " + std::to_string(s));
    }
  }

  static TokenDistribution from_logits(std::vector<std::string> vocab,
                                       std::span<const double> logits) {
    if (logits.empty()) throw ValidationError("empty logits");
    double mx = -INFINITY;
    for (double z : logits) {
      if (!std::isfinite(z)) throw ValidationError("non-finite logit");
      mx = std::max(mx, z);
    }
    Vec p(logits.size());
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] = std::exp(logits[i] - mx);
    for (double& v : p) v /= s;
    return TokenDistribution(std::move(vocab), std::move(p));
  }

  const std::vector<std::string>& vocab() const { return vocab_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  double prob(std::string_view token) const {
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      if (vocab_[i] == token) return probs_[i];
    }
    throw ValidationError("token not in vocabulary: " + std::string(token));
  }

  std::size_t argmax() const {
    return static_cast<std::size_t>(
        std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
  }

 private:
  std::vector<std::string> vocab_;
  Vec probs_;
};

// sum_i p_i log(p_i / max(q_i, eps)); terms with p_i = 0 contribute 0.
inline double forward_kl(const TokenDistribution& p, const TokenDistribution& q) {
  if (p.vocab() != q.vocab()) {
    throw ValidationError("forward_kl: vocabularies differ");
  }
  double kl = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    kl += p[i] * (std::log(p[i]) - std::log(std::max(q[i], kProbabilityFloor)));
  }
  // Rounding can leave a tiny negative value when p == q.
  return std::max(kl, 0.0);
}

// ---------------------------------------------------------------------------
// Prompt features
// ---------------------------------------------------------------------------

// Full mode sees query, member and keyword; compact mode drops the member
// block and hashes into a third of the full width.
enum class FeatureMode { kFull, kCompact };

inline std::string_view to_string(FeatureMode m) {
  return m == FeatureMode::kFull ? "full" : "compact";
}

inline std::size_t compact_dim(std::size_t full_dim) {
  return (full_dim + 2) / 3;
}

struct ScoringInput {
  std::string query;
  OptionalMember member;
  FacetKeyword keyword;
};

inline std::vector<std::string> prompt_feature_names(
    const ScoringInput& in, FeatureMode mode,
    std::optional<std::string_view> prev_token = std::nullopt) {
  const auto& k = in.keyword;
  const std::string type(to_string(k.facet_type));
  const auto q = tokenize(in.query);
  const auto name = tokenize(k.canonical_name);
  std::vector<std::string> f;
  f.push_back("bias");
  f.push_back("type:" + type);
  for (std::size_t i = 0; i < q.size(); ++i) {
    f.push_back("q*kw:" + q[i] + "|" + k.id);
    if (i + 1 < q.size()) f.push_back("qq*kw:" + q[i] + "_" + q[i + 1] + "|" + k.id);
    for (const auto& nt : name) f.push_back("q*nt:" + q[i] + "|" + nt);
  }
  if (token_multiset_contains(in.query, k.canonical_name)) {
    f.push_back("redundant");
    f.push_back("redundant:" + type);
  }
  if (mode == FeatureMode::kFull && in.member) {
    const auto& m = *in.member;
    std::vector<std::string> mt;
    for (const auto& t : m.preferred_titles) {
      for (auto& tok : tokenize(t)) mt.push_back(tok);
    }
    for (const auto& tok : mt) f.push_back("mt*kw:" + tok + "|" + k.id);
    bool listed = false;
    for (const auto& ind : m.industries) {
      auto n = normalize(ind);
      f.push_back("mi*kw:" + n + "|" + k.id);
      listed = listed || n == normalize(k.canonical_name);
    }
    if (k.facet_type == FacetType::kIndustry) {
      const std::string flag = listed ? "ind_listed" : "ind_unlisted";
      f.push_back(flag);
      for (const auto& qt : q) {
        for (const auto& tok : mt) f.push_back(flag + ":" + qt + "|" + tok);
      }
    }
  }
  if (prev_token) f.push_back("prev:" + std::string(*prev_token));
  return f;
}

inline SparseVector prompt_features(
    const ScoringInput& in, FeatureMode mode, std::size_t dim,
    std::optional<std::string_view> prev_token = std::nullopt) {
  std::map<std::uint32_t, double> counts;
  for (const auto& name : prompt_feature_names(in, mode, prev_token)) {
    counts[hash_bucket(name, dim)] += 1;
  }
  auto x = SparseVector::from_counts(dim, counts);
  const double n = x.norm();
  for (auto& [i, v] : x.entries) v /= n;
  return x;
}

// ---------------------------------------------------------------------------
// Parameters and scorers
// ---------------------------------------------------------------------------

// Row-major feature_dim x vocab.size() weights.
struct ScorerParams {
  std::size_t feature_dim = 0;
  std::vector<std::string> vocab;
  std::uint64_t seed = 0;
  FeatureMode mode = FeatureMode::kFull;
  Vec weights;

  static ScorerParams random(FeatureMode mode, std::uint64_t seed,
                             double scale = 0.01,
                             std::size_t full_dim = kFullScorerDim,
                             std::vector<std::string> vocab = binary_vocab()) {
    ScorerParams p;
    p.mode = mode;
    p.feature_dim = mode == FeatureMode::kFull ? full_dim : compact_dim(full_dim);
    p.vocab = std::move(vocab);
    p.seed = seed;
    p.weights.resize(p.feature_dim * p.vocab.size());
    Rng rng(seed);
    for (double& w : p.weights) w = scale > 0 ? rng.normal(scale) : 0.0;
    p.validate();
    return p;
  }

  std::size_t vocab_size() const { return vocab.size(); }

  std::size_t token_index(std::string_view token) const {
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (vocab[i] == token) return i;
    }
    throw ValidationError("token not in scorer vocabulary: " + std::string(token));
  }

  void validate() const {
    if (feature_dim == 0) throw ValidationError("scorer feature_dim is 0");
    std::set<std::string> seen(vocab.begin(), vocab.end());
    if (seen.size() != vocab.size()) {
      throw ValidationError("scorer vocabulary has duplicates");
    }
    if (!seen.count(std::string(kYesToken)) || !seen.count(std::string(kNoToken))) {
      throw ValidationError("scorer vocabulary must contain Yes and No");
    }
    if (weights.size() != feature_dim * vocab.size()) {
      throw ValidationError("scorer weight size does not match dimensions");
    }
    for (double w : weights) {
      if (!std::isfinite(w)) throw ValidationError("non-finite scorer weight");
    }
  }

  Vec logits(const SparseVector& x) const {
    if (x.dim != feature_dim) {
      throw ValidationError("scorer input dimension mismatch");
    }
    const std::size_t v = vocab.size();
    Vec z(v, 0.0);
    for (auto& [f, val] : x.entries) {
      const double* row = weights.data() + f * v;
      for (std::size_t t = 0; t < v; ++t) z[t] += val * row[t];
    }
    return z;
  }

  SparseVector features(const ScoringInput& in,
                        std::optional<std::string_view> prev = std::nullopt) const {
    return prompt_features(in, mode, feature_dim, prev);
  }

  TokenDistribution distribution(const SparseVector& x) const {
    auto z = logits(x);
    return TokenDistribution::from_logits(vocab, z);
  }

  bool operator==(const ScorerParams&) const = default;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual const std::vector<std::string>& vocab() const = 0;
  virtual TokenDistribution distribution(const ScoringInput& in) const = 0;
};

class ParametricScorer : public Scorer {
 public:
  explicit ParametricScorer(std::shared_ptr<const ScorerParams> params)
      : params_(std::move(params)) {
    if (!params_) throw ValidationError("scorer params are null");
    params_->validate();
  }
  explicit ParametricScorer(ScorerParams params)
      : ParametricScorer(std::make_shared<const ScorerParams>(std::move(params))) {}

  const std::vector<std::string>& vocab() const override { return params_->vocab; }
  TokenDistribution distribution(const ScoringInput& in) const override {
    return params_->distribution(params_->features(in));
  }
  const ScorerParams& params() const { return *params_; }

 private:
  std::shared_ptr<const ScorerParams> params_;
};

// Scorer that ignores its input and emits fixed logits.
class ConstantScorer : public Scorer {
 public:
  ConstantScorer(std::vector<std::string> vocab, Vec logits)
      : vocab_(std::move(vocab)), logits_(std::move(logits)) {
    auto has = [&](std::string_view t) {
      return std::find(vocab_.begin(), vocab_.end(), t) != vocab_.end();
    };
    if (!has(kYesToken) || !has(kNoToken)) {
      throw ValidationError("scorer vocabulary must contain Yes and No");
    }
    if (logits_.size() != vocab_.size()) {
      throw ValidationError("logit count does not match vocabulary");
    }
  }
  const std::vector<std::string>& vocab() const override { return vocab_; }
  TokenDistribution distribution(const ScoringInput&) const override {
    return TokenDistribution::from_logits(vocab_, logits_);
  }

 private:
  std::vector<std::string> vocab_;
  Vec logits_;
};

inline double score_pointwise(std::string_view query, const OptionalMember& member,
                              const FacetKeyword& candidate, const Scorer& scorer) {
  return scorer
      .distribution(ScoringInput{std::string(query), member, candidate})
      .prob(kYesToken);
}

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

inline constexpr std::size_t kServedTopK = 5;
inline constexpr double kYesThreshold = 0.5;

inline bool ranked_before(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (*a.p_yes != *b.p_yes) return *a.p_yes > *b.p_yes;
  if (a.retrieval_similarity != b.retrieval_similarity) {
    return a.retrieval_similarity > b.retrieval_similarity;
  }
  return a.keyword.id < b.keyword.id;
}

inline void require_scored(std::span<const ScoredCandidate> cands) {
  for (const auto& c : cands) {
    if (!c.p_yes) {
      throw ValidationError("candidate " + c.keyword.id + " has not been scored");
    }
    if (!(*c.p_yes >= 0 && *c.p_yes <= 1)) {
      throw ValidationError("candidate " + c.keyword.id + " has p_yes outside [0, 1]");
    }
  }
}

// Sort by p_yes, keep p_yes > threshold, truncate to k.
inline std::vector<ScoredCandidate> rank_and_gate(
    std::vector<ScoredCandidate> candidates, std::size_t k = kServedTopK,
    double threshold = kYesThreshold) {
  require_scored(candidates);
  std::sort(candidates.begin(), candidates.end(), ranked_before);
  std::vector<ScoredCandidate> out;
  for (auto& c : candidates) {
    if (out.size() == k || !(*c.p_yes > threshold)) break;
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ScoredCandidate> score_candidates(
    std::string_view query, const OptionalMember& member,
    std::vector<ScoredCandidate> candidates, const Scorer& scorer) {
  for (auto& c : candidates) {
    c.p_yes = score_pointwise(query, member, c.keyword, scorer);
  }
  return candidates;
}

inline std::size_t token_length(const FacetKeyword& k) {
  return word_count(k.canonical_name);
}

struct ListwiseResult {
  std::vector<ScoredCandidate> ordered;
  std::size_t generated_tokens = 0;
};

// One logical prompt over all candidates. For the parametric scorer the
// emitted order is the internal p_Yes order, so parity with the pointwise
// path is exact; the generation length is the summed name lengths.
inline ListwiseResult score_listwise(std::string_view query,
                                     const OptionalMember& member,
                                     std::vector<ScoredCandidate> candidates,
                                     const Scorer& scorer) {
  if (candidates.empty()) throw ValidationError("score_listwise: no candidates");
  ListwiseResult r;
  for (const auto& c : candidates) r.generated_tokens += token_length(c.keyword);
  r.ordered = score_candidates(query, member, std::move(candidates), scorer);
  std::sort(r.ordered.begin(), r.ordered.end(), ranked_before);
  return r;
}

// ---------------------------------------------------------------------------
// Supervised training
// ---------------------------------------------------------------------------

struct SupervisedConfig {
  std::size_t epochs = 40;
  double learning_rate = 2.0;
  std::size_t batch_size = 16;
  std::uint64_t seed = 11;
};

namespace detail {

// Adds scale * x (outer) g into the weight gradient.
inline void accumulate_outer(std::unordered_map<std::uint32_t, Vec>& grad,
                             const SparseVector& x, const Vec& g, double scale) {
  for (auto& [f, v] : x.entries) {
    auto& row = grad[f];
    if (row.empty()) row.assign(g.size(), 0.0);
    for (std::size_t t = 0; t < g.size(); ++t) row[t] += scale * v * g[t];
  }
}

inline void apply_rows(ScorerParams& p,
                       const std::unordered_map<std::uint32_t, Vec>& grad,
                       double lr) {
  std::vector<std::uint32_t> rows;
  rows.reserve(grad.size());
  for (auto& [f, g] : grad) rows.push_back(f);
  std::sort(rows.begin(), rows.end());
  const std::size_t v = p.vocab_size();
  for (auto f : rows) {
    const auto& g = grad.at(f);
    double* w = p.weights.data() + f * v;
    for (std::size_t t = 0; t < v; ++t) w[t] -= lr * g[t];
  }
}

}  // namespace detail

// Mini-batch SGD on cross-entropy of the target token (Okay -> Yes,
// Poor -> No). Returns the trained copy; `history` receives epoch mean loss.
inline ScorerParams train_supervised(ScorerParams student,
                                     std::span<const LabeledExample> corpus,
                                     const SupervisedConfig& cfg,
                                     TrainHistory* history = nullptr) {
  if (corpus.empty()) throw ValidationError("train_supervised: empty corpus");
  if (cfg.batch_size == 0) throw ValidationError("train_supervised: batch size 0");
  student.validate();
  const std::size_t yes = student.token_index(kYesToken);
  const std::size_t no = student.token_index(kNoToken);

  std::vector<SparseVector> xs;
  xs.reserve(corpus.size());
  for (const auto& ex : corpus) {
    xs.push_back(student.features({ex.query, ex.member, ex.keyword}));
  }
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(cfg.seed);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double total = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      std::unordered_map<std::uint32_t, Vec> grad;
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t i = order[b];
        const std::size_t target =
            corpus[i].verdict.label == Label::kOkay ? yes : no;
        auto d = student.distribution(xs[i]);
        total -= std::log(std::max(d[target], kProbabilityFloor));
        Vec g(d.probs().begin(), d.probs().end());
        g[target] -= 1;
        detail::accumulate_outer(grad, xs[i], g, 1.0 / (end - start));
      }
      detail::apply_rows(student, grad, cfg.learning_rate);
    }
    if (history) history->epoch_loss.push_back(total / corpus.size());
  }
  return student;
}

// ---------------------------------------------------------------------------
// On-policy distillation
// ---------------------------------------------------------------------------

struct Trajectory {
  ScoringInput input;
  std::vector<std::size_t> tokens;  // y_1..y_T as vocabulary indices
  std::vector<TokenDistribution> student_dists;
  std::vector<TokenDistribution> teacher_dists;
};

inline void check_shared_vocab(const ScorerParams& student,
                               const ScorerParams& teacher) {
  if (student.vocab != teacher.vocab) {
    throw ValidationError("teacher and student vocabularies differ");
  }
}

// Samples y_1..y_T from the student. Step t > 0 conditions both models on the
// previously sampled token through one extra context feature.
inline Trajectory sample_trajectory(const ScorerParams& student,
                                    const ScorerParams& teacher,
                                    const ScoringInput& input, std::size_t steps,
                                    Rng& rng) {
  if (steps == 0) throw ValidationError("trajectory length must be >= 1");
  check_shared_vocab(student, teacher);
  Trajectory tr{input, {}, {}, {}};
  std::optional<std::string_view> prev;
  for (std::size_t t = 0; t < steps; ++t) {
    auto q = student.distribution(student.features(input, prev));
    auto p = teacher.distribution(teacher.features(input, prev));
    double u = rng.uniform();
    std::size_t y = q.size() - 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (u < q[i]) {
        y = i;
        break;
      }
      u -= q[i];
    }
    tr.tokens.push_back(y);
    tr.student_dists.push_back(std::move(q));
    tr.teacher_dists.push_back(std::move(p));
    prev = student.vocab[y];
  }
  return tr;
}

// Mean over trajectories of sum_t KL(teacher_t || student_t), with the student
// re-evaluated under `student` on the trajectories' fixed token prefixes.
inline double distill_objective(const ScorerParams& student,
                                std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) throw ValidationError("no trajectories");
  double total = 0;
  for (const auto& tr : trajectories) {
    std::optional<std::string_view> prev;
    for (std::size_t t = 0; t < tr.tokens.size(); ++t) {
      auto q = student.distribution(student.features(tr.input, prev));
      total += forward_kl(tr.teacher_dists[t], q);
      prev = student.vocab[tr.tokens[t]];
    }
  }
  return total / trajectories.size();
}

// Gradient of distill_objective with respect to the student weights, as
// sparse rows. Per step, dKL/dlogits = q - p.
inline std::unordered_map<std::uint32_t, Vec> distill_gradient(
    const ScorerParams& student, std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) throw ValidationError("no trajectories");
  std::unordered_map<std::uint32_t, Vec> grad;
  const double scale = 1.0 / trajectories.size();
  for (const auto& tr : trajectories) {
    std::optional<std::string_view> prev;
    for (std::size_t t = 0; t < tr.tokens.size(); ++t) {
      auto x = student.features(tr.input, prev);
      auto q = student.distribution(x);
      Vec g(q.size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = q[i] - tr.teacher_dists[t][i];
      detail::accumulate_outer(grad, x, g, scale);
      prev = student.vocab[tr.tokens[t]];
    }
  }
  return grad;
}

struct DistillConfig {
  std::size_t steps = 200;
  std::size_t trajectory_length = 1;
  std::size_t samples_per_input = 1;
  std::size_t batch_size = 128;
  double learning_rate = 64.0;
  std::uint64_t seed = 13;
};

// Mean KL(teacher || student) over the first generated step of each input.
inline double mean_teacher_student_kl(const ScorerParams& student,
                                      const ScorerParams& teacher,
                                      std::span<const ScoringInput> inputs) {
  check_shared_vocab(student, teacher);
  if (inputs.empty()) throw ValidationError("no inputs");
  double total = 0;
  for (const auto& in : inputs) {
    total += forward_kl(teacher.distribution(teacher.features(in)),
                        student.distribution(student.features(in)));
  }
  return total / inputs.size();
}

inline double argmax_agreement(const ScorerParams& student,
                               const ScorerParams& teacher,
                               std::span<const ScoringInput> inputs) {
  check_shared_vocab(student, teacher);
  if (inputs.empty()) throw ValidationError("no inputs");
  std::size_t agree = 0;
  for (const auto& in : inputs) {
    agree += teacher.distribution(teacher.features(in)).argmax() ==
             student.distribution(student.features(in)).argmax();
  }
  return static_cast<double>(agree) / inputs.size();
}

// Each step draws a batch of inputs, samples trajectories from the current
// student, and descends the summed per-step forward KL. `history` receives the
// batch objective before each update.
inline ScorerParams distill_on_policy(ScorerParams student,
                                      const ScorerParams& teacher,
                                      std::span<const ScoringInput> inputs,
                                      const DistillConfig& cfg,
                                      TrainHistory* history = nullptr) {
  check_shared_vocab(student, teacher);
  if (inputs.empty()) throw ValidationError("distill_on_policy: no inputs");
  if (cfg.batch_size == 0 || cfg.samples_per_input == 0) {
    throw ValidationError("distill_on_policy: batch and sample counts must be >= 1");
  }
  student.validate();
  teacher.validate();
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(inputs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::size_t cursor = order.size();
  for (std::size_t step = 0; step < cfg.steps; ++step) {
    std::vector<Trajectory> batch;
    for (std::size_t b = 0; b < cfg.batch_size; ++b) {
      if (cursor == order.size()) {
        rng.shuffle(order);
        cursor = 0;
      }
      const auto& in = inputs[order[cursor++]];
      for (std::size_t s = 0; s < cfg.samples_per_input; ++s) {
        batch.push_back(
            sample_trajectory(student, teacher, in, cfg.trajectory_length, rng));
      }
    }
    if (history) history->epoch_loss.push_back(distill_objective(student, batch));
    detail::apply_rows(student, distill_gradient(student, batch), cfg.learning_rate);
  }
  return student;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

inline constexpr char kScorerMagic[8] = {'F', 'W', 'S', 'C', 'R', '0', '0', '1'};

// Little-endian binary: magic, u64 F, u64 |V|, u64 seed, u8 mode, then each
// token as u64 length + bytes, then F*|V| doubles.
inline void save_scorer(const ScorerParams& p, const std::string& path) {
  p.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kScorerMagic, sizeof(kScorerMagic));
  detail::write_pod<std::uint64_t>(out, p.feature_dim);
  detail::write_pod<std::uint64_t>(out, p.vocab.size());
  detail::write_pod<std::uint64_t>(out, p.seed);
  detail::write_pod<std::uint8_t>(out, p.mode == FeatureMode::kFull ? 0 : 1);
  for (const auto& t : p.vocab) {
    detail::write_pod<std::uint64_t>(out, t.size());
    out.write(t.data(), static_cast<std::streamsize>(t.size()));
  }
  out.write(reinterpret_cast<const char*>(p.weights.data()),
            static_cast<std::streamsize>(p.weights.size() * sizeof(double)));
  if (!out) throw Error("write failed: " + path);
}

inline ScorerParams load_scorer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kScorerMagic, sizeof(magic)) != 0) {
    throw Error(path + ": not a scorer file");
  }
  ScorerParams p;
  p.feature_dim = detail::read_pod<std::uint64_t>(in, "feature_dim");
  const auto v = detail::read_pod<std::uint64_t>(in, "vocab size");
  p.seed = detail::read_pod<std::uint64_t>(in, "seed");
  const auto mode = detail::read_pod<std::uint8_t>(in, "mode");
  if (mode > 1) throw Error(path + ": unknown feature mode");
  p.mode = mode == 0 ? FeatureMode::kFull : FeatureMode::kCompact;
  if (v == 0 || v > 1024 || p.feature_dim == 0 || p.feature_dim > (1u << 24)) {
    throw Error(path + ": implausible scorer dimensions");
  }
  for (std::uint64_t i = 0; i < v; ++i) {
    const auto n = detail::read_pod<std::uint64_t>(in, "token length");
    if (n > 256) throw Error(path + ": implausible token length");
    std::string t(n, '\0');
    in.read(t.data(), static_cast<std::streamsize>(n));
    p.vocab.push_back(std::move(t));
  }
  p.weights.resize(p.feature_dim * v);
  in.read(reinterpret_cast<char*>(p.weights.data()),
          static_cast<std::streamsize>(p.weights.size() * sizeof(double)));
  if (!in) throw Error(path + ": truncated weights");
  p.validate();
  return p;
}

}  // namespace facetwise
