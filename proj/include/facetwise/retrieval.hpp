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

// Embedding-based candidate retrieval. A single linear projection over hashed
// text features encodes both the query side (query text plus member
// attributes) and the facet side (name plus definition); training uses
// InfoNCE with in-batch negatives, with binary cross-entropy as a baseline.

#pragma once

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "facetwise/common.hpp"
#include "facetwise/judge.hpp"
#include "facetwise/keyword.hpp"
#include "facetwise/random.hpp"
#include "facetwise/taxonomy.hpp"

namespace facetwise {

using Vec = std::vector<double>;

inline constexpr std::size_t kDefaultFeatureDim = 4096;
inline constexpr std::size_t kDefaultEmbedDim = 64;

// ---------------------------------------------------------------------------
// Features
// ---------------------------------------------------------------------------

// Sorted, duplicate-free (index, value) pairs.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double norm() const {
    double s = 0;
    for (auto& [i, v] : entries) s += v * v;
    return std::sqrt(s);
  }
  bool operator==(const SparseVector&) const = default;

  static SparseVector from_counts(std::size_t dim,
                                  const std::map<std::uint32_t, double>& c) {
    SparseVector out{dim, {c.begin(), c.end()}};
    return out;
  }
};

inline std::uint32_t hash_bucket(std::string_view feature, std::size_t dim) {
  return static_cast<std::uint32_t>(fnv1a(feature) % dim);
}

// Hashed bag of words over normalized tokens plus boundary-padded character
// trigrams of each token, L2-normalized. Empty text gives the zero vector.
inline SparseVector featurize(std::string_view text,
                              std::size_t dim = kDefaultFeatureDim) {
  std::map<std::uint32_t, double> counts;
  for (const auto& tok : tokenize(text)) {
    counts[hash_bucket("w:" + tok, dim)] += 1;
    const std::string padded = "#" + tok + "#";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      counts[hash_bucket("c:" + padded.substr(i, 3), dim)] += 1;
    }
  }
  auto out = SparseVector::from_counts(dim, counts);
  const double n = out.norm();
  if (n > 0) {
    for (auto& [i, v] : out.entries) v /= n;
  }
  return out;
}

inline std::string query_side_text(std::string_view query,
                                   const OptionalMember& member) {
  std::string text(query);
  if (member) {
    auto m = serialize_member(*member);
    if (!m.empty()) text += " " + m;
  }
  return text;
}

inline std::string facet_side_text(const FacetKeyword& k) {
  return k.definition.empty() ? k.canonical_name
                              : k.canonical_name + " " + k.definition;
}

// ---------------------------------------------------------------------------
// Encoder
// ---------------------------------------------------------------------------

// Unit-norm dense vector.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;

  // Throws ValidationError on a zero or non-finite vector.
  static EmbeddingVector normalized(Vec raw) {
    double n = 0;
    for (double v : raw) n += v * v;
    n = std::sqrt(n);
    if (!(n > 0) || !std::isfinite(n)) {
      throw ValidationError("cannot normalize a zero or non-finite vector");
    }
    for (double& v : raw) v /= n;
    EmbeddingVector e;
    e.values_ = std::move(raw);
    return e;
  }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double dot(const EmbeddingVector& o) const {
    double s = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * o.values_[i];
    return s;
  }

  bool operator==(const EmbeddingVector&) const = default;

 private:
  Vec values_;
};

// Projection from feature space (F) to embedding space (D), row-major F x D.
struct EncoderParams {
  std::size_t feature_dim = 0;
  std::size_t embed_dim = 0;
  std::uint64_t seed = 0;
  Vec projection;

  static EncoderParams random(std::size_t feature_dim, std::size_t embed_dim,
                              std::uint64_t seed) {
    if (feature_dim == 0 || embed_dim == 0) {
      throw ValidationError("encoder dimensions must be positive");
    }
    EncoderParams p{feature_dim, embed_dim, seed, Vec(feature_dim * embed_dim)};
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(embed_dim));
    for (double& w : p.projection) w = rng.normal(scale);
    return p;
  }

  std::span<double> row(std::size_t f) {
    return {projection.data() + f * embed_dim, embed_dim};
  }
  std::span<const double> row(std::size_t f) const {
    return {projection.data() + f * embed_dim, embed_dim};
  }

  void validate() const {
    if (feature_dim == 0 || embed_dim == 0) {
      throw ValidationError("encoder dimensions must be positive");
    }
    if (projection.size() != feature_dim * embed_dim) {
      throw ValidationError("projection size does not match F x D");
    }
    for (double w : projection) {
      if (!std::isfinite(w)) throw ValidationError("non-finite encoder weight");
    }
  }

  bool operator==(const EncoderParams&) const = default;
};

// W^T x before normalization.
inline Vec project(const SparseVector& x, const EncoderParams& p) {
  if (x.dim != p.feature_dim) {
    throw ValidationError("feature dimension " + std::to_string(x.dim) +
                          " does not match encoder " +
                          std::to_string(p.feature_dim));
  }
  Vec e(p.embed_dim, 0.0);
  for (auto& [f, v] : x.entries) {
    auto r = p.row(f);
    for (std::size_t d = 0; d < p.embed_dim; ++d) e[d] += v * r[d];
  }
  return e;
}

inline EmbeddingVector encode_features(const SparseVector& x,
                                       const EncoderParams& p) {
  if (x.empty()) {
    throw ValidationError("cannot encode an empty feature vector");
  }
  return EmbeddingVector::normalized(project(x, p));
}

inline EmbeddingVector encode_query(std::string_view query,
                                    const OptionalMember& member,
                                    const EncoderParams& p) {
  return encode_features(featurize(query_side_text(query, member), p.feature_dim),
                         p);
}

inline EmbeddingVector encode_facet(const FacetKeyword& k,
                                    const EncoderParams& p) {
  return encode_features(featurize(facet_side_text(k), p.feature_dim), p);
}

// Siamese encoder: both towers read the same parameter object.
class SiameseEncoder {
 public:
  explicit SiameseEncoder(std::shared_ptr<const EncoderParams> params)
      : params_(std::move(params)) {
    if (!params_) throw ValidationError("encoder params are null");
    params_->validate();
  }

  EmbeddingVector encode_query(std::string_view q, const OptionalMember& m) const {
    return facetwise::encode_query(q, m, query_tower());
  }
  EmbeddingVector encode_facet(const FacetKeyword& k) const {
    return facetwise::encode_facet(k, facet_tower());
  }

  const EncoderParams& query_tower() const { return *params_; }
  const EncoderParams& facet_tower() const { return *params_; }
  const std::shared_ptr<const EncoderParams>& params() const { return params_; }

 private:
  std::shared_ptr<const EncoderParams> params_;
};

// ---------------------------------------------------------------------------
// Losses
// ---------------------------------------------------------------------------

struct ContrastiveLoss {
  double loss = 0;
  std::vector<Vec> grad_queries;
  std::vector<Vec> grad_facets;
};

namespace detail {
inline void require_finite(std::span<const Vec> vs, const char* what) {
  for (const auto& v : vs) {
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw ValidationError(std::string(what) + " contains NaN or inf");
      }
    }
  }
}
}  // namespace detail

// L = -(1/N) sum_i log softmax_j(q_i . d_j / tau)[i], with gradients with
// respect to every q_i and d_j. Row i of the similarity matrix uses every
// facet in the batch as the candidate set.
inline ContrastiveLoss infonce_loss(std::span<const Vec> q,
                                    std::span<const Vec> d, double tau) {
  if (q.size() != d.size()) {
    throw ValidationError("infonce_loss: query/facet batch sizes differ");
  }
  if (q.empty()) throw ValidationError("infonce_loss: empty batch");
  if (!(tau > 0)) throw ValidationError("infonce_loss: tau must be positive");
  detail::require_finite(q, "query embeddings");
  detail::require_finite(d, "facet embeddings");
  const std::size_t n = q.size();
  const std::size_t dim = q[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].size() != dim || d[i].size() != dim) {
      throw ValidationError("infonce_loss: embedding sizes differ");
    }
  }

  ContrastiveLoss out;
  out.grad_queries.assign(n, Vec(dim, 0.0));
  out.grad_facets.assign(n, Vec(dim, 0.0));
  Vec logits(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double mx = -INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += q[i][k] * d[j][k];
      logits[j] = s / tau;
      mx = std::max(mx, logits[j]);
    }
    double z = 0;
    for (std::size_t j = 0; j < n; ++j) z += std::exp(logits[j] - mx);
    const double lse = mx + std::log(z);
    out.loss += (lse - logits[i]) * inv_n;
    for (std::size_t j = 0; j < n; ++j) {
      // dL/dS_ij = (softmax_ij - [i == j]) / N, and dS_ij = q_i . d_j / tau.
      double g = (std::exp(logits[j] - lse) - (i == j ? 1.0 : 0.0)) * inv_n / tau;
      if (g == 0) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        out.grad_queries[i][k] += g * d[j][k];
        out.grad_facets[j][k] += g * q[i][k];
      }
    }
  }
  return out;
}

struct BinaryLoss {
  double loss = 0;
  Vec grad;  // with respect to each logit
};

// Mean binary cross-entropy on logits in the log-sum-exp stable form
// max(z, 0) - z y + log(1 + exp(-|z|)).
inline BinaryLoss bce_loss(std::span<const double> logits,
                           std::span<const int> labels) {
  if (logits.size() != labels.size()) {
    throw ValidationError("bce_loss: logits and labels differ in length");
  }
  if (logits.empty()) throw ValidationError("bce_loss: empty input");
  BinaryLoss out;
  out.grad.resize(logits.size());
  const double inv_n = 1.0 / static_cast<double>(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double z = logits[i];
    if (!std::isfinite(z)) throw ValidationError("bce_loss: non-finite logit");
    if (labels[i] != 0 && labels[i] != 1) {
      throw ValidationError("bce_loss: labels must be 0 or 1");
    }
    const double y = labels[i];
    out.loss += (std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)))) * inv_n;
    const double sig = z >= 0 ? 1.0 / (1.0 + std::exp(-z))
                              : std::exp(z) / (1.0 + std::exp(z));
    out.grad[i] = (sig - y) * inv_n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

enum class EncoderObjective { kInfoNCE, kBinaryCrossEntropy };

struct EncoderTrainConfig {
  EncoderObjective objective = EncoderObjective::kInfoNCE;
  double tau = 0.05;
  double learning_rate = 0.5;
  std::size_t epochs = 20;
  std::size_t batch_size = 32;
  std::uint64_t seed = 7;
  std::size_t feature_dim = kDefaultFeatureDim;
  std::size_t embed_dim = kDefaultEmbedDim;
};

struct TrainHistory {
  std::vector<double> epoch_loss;
};

namespace detail {

struct EncodedSide {
  const SparseVector* x;
  Vec raw;
  double norm;
  Vec unit;
};

inline EncodedSide forward(const SparseVector& x, const EncoderParams& p) {
  EncodedSide s{&x, project(x, p), 0, {}};
  double n = 0;
  for (double v : s.raw) n += v * v;
  s.norm = std::sqrt(n);
  if (!(s.norm > 0)) throw ValidationError("zero embedding during training");
  s.unit = s.raw;
  for (double& v : s.unit) v /= s.norm;
  return s;
}

// Accumulates dL/dW for one side given dL/du at its unit output, through
// u = e / |e|: dL/de = (g - (g . u) u) / |e|.
inline void backward(const EncodedSide& s, const Vec& grad_unit,
                     std::unordered_map<std::uint32_t, Vec>& grad_rows,
                     std::size_t dim) {
  double gu = 0;
  for (std::size_t k = 0; k < dim; ++k) gu += grad_unit[k] * s.unit[k];
  Vec ge(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    ge[k] = (grad_unit[k] - gu * s.unit[k]) / s.norm;
  }
  for (auto& [f, v] : s.x->entries) {
    auto& row = grad_rows[f];
    if (row.empty()) row.assign(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) row[k] += v * ge[k];
  }
}

inline void apply(EncoderParams& p,
                  const std::unordered_map<std::uint32_t, Vec>& grad_rows,
                  double lr) {
  // Ascending row order keeps float accumulation order fixed.
  std::vector<std::uint32_t> rows;
  rows.reserve(grad_rows.size());
  for (auto& [f, g] : grad_rows) rows.push_back(f);
  std::sort(rows.begin(), rows.end());
  for (auto f : rows) {
    const auto& g = grad_rows.at(f);
    auto r = p.row(f);
    for (std::size_t k = 0; k < p.embed_dim; ++k) r[k] -= lr * g[k];
  }
}

}  // namespace detail

// Trains the projection on (query, member) -> keyword pairs. InfoNCE uses the
// Okay-labeled pairs only, in batches whose positives are pairwise distinct;
// BCE uses every labeled pair with logit q . d / tau, in batches of the same
// size.
inline EncoderParams train_encoder(std::span<const LabeledExample> corpus,
                                   const EncoderTrainConfig& cfg,
                                   TrainHistory* history = nullptr,
                                   const EncoderParams* init = nullptr) {
  if (!(cfg.tau > 0)) throw ValidationError("train_encoder: tau must be positive");
  if (cfg.batch_size == 0) throw ValidationError("train_encoder: batch size 0");
  std::vector<std::size_t> positives;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].verdict.label == Label::kOkay) positives.push_back(i);
  }
  if (positives.empty()) {
    throw ValidationError("train_encoder: corpus has no positive pairs");
  }

  EncoderParams params =
      init ? *init : EncoderParams::random(cfg.feature_dim, cfg.embed_dim, cfg.seed);
  params.validate();
  const std::size_t dim = params.embed_dim;

  std::vector<SparseVector> qx(corpus.size()), dx(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    qx[i] = featurize(query_side_text(corpus[i].query, corpus[i].member),
                      params.feature_dim);
    dx[i] = featurize(facet_side_text(corpus[i].keyword), params.feature_dim);
    if (qx[i].empty() || dx[i].empty()) {
      throw ValidationError("train_encoder: example " + std::to_string(i) +
                            " has empty text");
    }
  }

  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> all(corpus.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  // The partition into batches is drawn once; each epoch visits the same
  // batches in a new order. Re-partitioning per epoch changes which negatives
  // share a batch and makes epoch losses incomparable.
  std::vector<std::vector<std::size_t>> batches;
  {
    if (cfg.objective == EncoderObjective::kInfoNCE) {
      auto order = positives;
      rng.shuffle(order);
      // Greedy packing; a positive already present in the open batch waits
      // for the next one.
      std::vector<std::size_t> pending = order;
      while (!pending.empty()) {
        std::vector<std::size_t> batch, rest;
        std::set<KeywordId> ids;
        for (auto i : pending) {
          if (batch.size() < cfg.batch_size &&
              ids.insert(corpus[i].keyword.id).second) {
            batch.push_back(i);
          } else {
            rest.push_back(i);
          }
        }
        batches.push_back(std::move(batch));
        pending = std::move(rest);
      }
    } else {
      auto order = all;
      rng.shuffle(order);
      for (std::size_t s = 0; s < order.size(); s += cfg.batch_size) {
        const std::size_t e = std::min(order.size(), s + cfg.batch_size);
        batches.emplace_back(order.begin() + s, order.begin() + e);
      }
    }
  }

  std::vector<std::size_t> visit(batches.size());
  for (std::size_t i = 0; i < visit.size(); ++i) visit[i] = i;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(visit);
    double epoch_loss = 0;
    for (auto bi : visit) {
      const auto& batch = batches[bi];
      std::vector<detail::EncodedSide> qs, ds;
      std::vector<Vec> qu, du;
      for (auto i : batch) {
        qs.push_back(detail::forward(qx[i], params));
        ds.push_back(detail::forward(dx[i], params));
        qu.push_back(qs.back().unit);
        du.push_back(ds.back().unit);
      }
      std::vector<Vec> gq, gd;
      if (cfg.objective == EncoderObjective::kInfoNCE) {
        auto l = infonce_loss(qu, du, cfg.tau);
        epoch_loss += l.loss;
        gq = std::move(l.grad_queries);
        gd = std::move(l.grad_facets);
      } else {
        Vec logits(batch.size());
        std::vector<int> labels(batch.size());
        for (std::size_t b = 0; b < batch.size(); ++b) {
          double s = 0;
          for (std::size_t k = 0; k < dim; ++k) s += qu[b][k] * du[b][k];
          logits[b] = s / cfg.tau;
          labels[b] = corpus[batch[b]].verdict.label == Label::kOkay;
        }
        auto l = bce_loss(logits, labels);
        epoch_loss += l.loss;
        gq.assign(batch.size(), Vec(dim));
        gd.assign(batch.size(), Vec(dim));
        for (std::size_t b = 0; b < batch.size(); ++b) {
          const double g = l.grad[b] / cfg.tau;
          for (std::size_t k = 0; k < dim; ++k) {
            gq[b][k] = g * du[b][k];
            gd[b][k] = g * qu[b][k];
          }
        }
      }
      std::unordered_map<std::uint32_t, Vec> grad_rows;
      for (std::size_t b = 0; b < batch.size(); ++b) {
        detail::backward(qs[b], gq[b], grad_rows, dim);
        detail::backward(ds[b], gd[b], grad_rows, dim);
      }
      detail::apply(params, grad_rows, cfg.learning_rate);
    }
    if (history) history->epoch_loss.push_back(epoch_loss / batches.size());
  }
  return params;
}

// ---------------------------------------------------------------------------
// Index and quota retrieval
// ---------------------------------------------------------------------------

struct ScoredCandidate {
  FacetKeyword keyword;
  double retrieval_similarity = 0;
  std::optional<double> p_yes;

  bool operator==(const ScoredCandidate&) const = default;
};

// Exact-scan index over the validated keywords of a taxonomy.
class FacetIndex {
 public:
  struct Entry {
    FacetKeyword keyword;
    EmbeddingVector embedding;
  };

  FacetIndex(const Taxonomy& taxonomy, const SiameseEncoder& encoder)
      : encoder_params_(encoder.params()) {
    for (const auto& k : taxonomy.keywords()) {
      if (k.status != KeywordStatus::kValidated) continue;
      entries_.push_back({k, encoder.encode_facet(k)});
    }
    if (entries_.empty()) {
      throw ValidationError("build_index: taxonomy has no validated keywords");
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const std::shared_ptr<const EncoderParams>& params() const { return encoder_params_; }

  const Entry* find(std::string_view id) const {
    for (const auto& e : entries_) {
      if (e.keyword.id == id) return &e;
    }
    return nullptr;
  }

 private:
  std::shared_ptr<const EncoderParams> encoder_params_;
  std::vector<Entry> entries_;
};

inline FacetIndex build_index(const Taxonomy& t, const SiameseEncoder& encoder) {
  if (t.empty()) throw ValidationError("build_index: empty taxonomy");
  return FacetIndex(t, encoder);
}

inline bool candidate_before(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.retrieval_similarity != b.retrieval_similarity) {
    return a.retrieval_similarity > b.retrieval_similarity;
  }
  return a.keyword.id < b.keyword.id;
}

// Per facet type, the top quota[t] entries by similarity (ties by id); types
// with fewer entries contribute all they have and are not backfilled. The
// union is sorted by similarity descending.
inline std::vector<ScoredCandidate> retrieve_with_quotas(
    const EmbeddingVector& query, const FacetIndex& index,
    const QuotaConfig& quotas = {}) {
  std::array<std::vector<ScoredCandidate>, 4> by_type;
  for (const auto& e : index.entries()) {
    by_type[type_index(e.keyword.facet_type)].push_back(
        {e.keyword, query.dot(e.embedding), std::nullopt});
  }
  std::vector<ScoredCandidate> out;
  out.reserve(quotas.total());
  for (auto t : kAllFacetTypes) {
    auto& v = by_type[type_index(t)];
    const std::size_t n = std::min(quotas[t], v.size());
    std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n),
                      v.end(), candidate_before);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::move(v[i]));
  }
  std::sort(out.begin(), out.end(), candidate_before);
  return out;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error("truncated file while reading " + what);
  return v;
}

}  // namespace detail

inline constexpr char kEncoderMagic[8] = {'F', 'W', 'E', 'N', 'C', '0', '0', '1'};

// Little-endian binary: 8-byte magic, u64 F, u64 D, u64 seed, F*D doubles.
inline void save_encoder(const EncoderParams& p, const std::string& path) {
  p.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(kEncoderMagic, sizeof(kEncoderMagic));
  detail::write_pod<std::uint64_t>(out, p.feature_dim);
  detail::write_pod<std::uint64_t>(out, p.embed_dim);
  detail::write_pod<std::uint64_t>(out, p.seed);
  out.write(reinterpret_cast<const char*>(p.projection.data()),
            static_cast<std::streamsize>(p.projection.size() * sizeof(double)));
  if (!out) throw Error("write failed: " + path);
}

inline EncoderParams load_encoder(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kEncoderMagic, sizeof(magic)) != 0) {
    throw Error(path + ": not an encoder file");
  }
  EncoderParams p;
  p.feature_dim = detail::read_pod<std::uint64_t>(in, "feature_dim");
  p.embed_dim = detail::read_pod<std::uint64_t>(in, "embed_dim");
  p.seed = detail::read_pod<std::uint64_t>(in, "seed");
  if (p.feature_dim == 0 || p.embed_dim == 0 ||
      p.feature_dim * p.embed_dim > (std::size_t{1} << 28)) {
    throw Error(path + ": implausible encoder dimensions");
  }
  p.projection.resize(p.feature_dim * p.embed_dim);
  in.read(reinterpret_cast<char*>(p.projection.data()),
          static_cast<std::streamsize>(p.projection.size() * sizeof(double)));
  if (!in) throw Error(path + ": truncated projection");
  p.validate();
  return p;
}

}  // namespace facetwise
