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

// Offline facet taxonomy: the curation filter pipeline (policy, liquidity,
// popularity), alias resolution and line-delimited JSON persistence.

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "facetwise/judge.hpp"
#include "facetwise/keyword.hpp"

namespace facetwise {

// ---------------------------------------------------------------------------
// Seeds
// ---------------------------------------------------------------------------

enum class SeedSource { kParentOccupation, kShortQuery };

inline std::string_view to_string(SeedSource s) {
  return s == SeedSource::kParentOccupation ? "ParentOccupation"
                                            : "ShortQuery";
}

struct SeedQuery {
  std::string text;
  SeedSource source = SeedSource::kParentOccupation;
};

inline SeedQuery make_seed(std::string text, SeedSource source) {
  if (source == SeedSource::kShortQuery && word_count(text) > 3) {
    throw ValidationError("short-query seed has more than 3 words: " + text);
  }
  return {std::move(text), source};
}

inline std::vector<SeedQuery> load_seeds(const std::string& path) {
  std::vector<SeedQuery> out;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    auto text = require_field<std::string>(j, "text", line);
    auto source = j.value("source", std::string("ParentOccupation"));
    SeedSource s;
    if (source == "ParentOccupation") {
      s = SeedSource::kParentOccupation;
    } else if (source == "ShortQuery") {
      s = SeedSource::kShortQuery;
    } else {
      throw ParseError(line, "source", "unknown '" + source + "'");
    }
    try {
      out.push_back(make_seed(text, s));
    } catch (const ValidationError& e) {
      throw ParseError(line, "text", e.what());
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Taxonomy
// ---------------------------------------------------------------------------

// Keywords indexed by id plus an alias map from every surface form (canonical
// name and aliases) to the owning id. Surface forms are scoped by facet type,
// so "Healthcare" the industry and "Healthcare" the domain term coexist.
// Lookups by free text go through normalize().
class Taxonomy {
 public:
  using AliasKey = std::pair<FacetType, std::string>;

  Taxonomy() = default;

  explicit Taxonomy(std::vector<FacetKeyword> keywords)
      : keywords_(std::move(keywords)) {
    std::sort(keywords_.begin(), keywords_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::set<AliasKey> validated_names;
    for (std::size_t i = 0; i < keywords_.size(); ++i) {
      const auto& k = keywords_[i];
      validate(k);
      if (!by_id_.emplace(k.id, i).second) {
        throw ValidationError("duplicate keyword id " + k.id);
      }
      auto norm_key = AliasKey{k.facet_type, normalize(k.canonical_name)};
      if (k.status == KeywordStatus::kValidated &&
          !validated_names.insert(norm_key).second) {
        throw ValidationError("two validated " +
                              std::string(to_string(k.facet_type)) +
                              " keywords share the name '" +
                              norm_key.second + "'");
      }
      // First (smallest id) owner wins on collisions.
      alias_map_.emplace(AliasKey{k.facet_type, k.canonical_name}, k.id);
      normalized_.emplace(norm_key, k.id);
      for (const auto& a : k.aliases) {
        alias_map_.emplace(AliasKey{k.facet_type, a}, k.id);
        normalized_.emplace(AliasKey{k.facet_type, normalize(a)}, k.id);
      }
    }
  }

  const std::vector<FacetKeyword>& keywords() const { return keywords_; }
  std::size_t size() const { return keywords_.size(); }
  bool empty() const { return keywords_.empty(); }

  const FacetKeyword* find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &keywords_[it->second];
  }

  // Resolves a surface form (any spelling that normalizes to a known name or
  // alias) within one facet type.
  const FacetKeyword* lookup(std::string_view text, FacetType type) const {
    auto it = normalized_.find({type, normalize(text)});
    return it == normalized_.end() ? nullptr : find(it->second);
  }

  std::vector<const FacetKeyword*> lookup_any(std::string_view text) const {
    std::vector<const FacetKeyword*> out;
    for (auto t : kAllFacetTypes) {
      if (auto* k = lookup(text, t)) out.push_back(k);
    }
    return out;
  }

  const std::map<AliasKey, KeywordId>& alias_map() const { return alias_map_; }

  Taxonomy with_status(std::string_view id, KeywordStatus status) const {
    auto copy = keywords_;
    auto it = std::find_if(copy.begin(), copy.end(),
                           [&](const auto& k) { return k.id == id; });
    if (it == copy.end()) {
      throw ValidationError("no keyword with id " + std::string(id));
    }
    it->status = status;
    return Taxonomy(std::move(copy));
  }

  Taxonomy with_status_only(KeywordStatus status) const {
    std::vector<FacetKeyword> kept;
    for (const auto& k : keywords_) {
      if (k.status == status) kept.push_back(k);
    }
    return Taxonomy(std::move(kept));
  }

  std::array<std::size_t, 4> type_histogram() const {
    std::array<std::size_t, 4> h{};
    for (const auto& k : keywords_) ++h[type_index(k.facet_type)];
    return h;
  }

  bool operator==(const Taxonomy& other) const {
    return keywords_ == other.keywords_;
  }

 private:
  std::vector<FacetKeyword> keywords_;
  std::map<std::string, std::size_t> by_id_;
  std::map<AliasKey, KeywordId> alias_map_;
  std::map<AliasKey, KeywordId> normalized_;
};

// Raised for same-name keywords of different facet types; they stay separate.
struct AliasWarning {
  std::string normalized_name;
  std::vector<KeywordId> ids;
  std::string message;
};

// Merges keywords whose normalized canonical names match within a facet type.
// The merged entry keeps the smallest id (and that entry's canonical name,
// definition and status) and takes the union of all surface forms as
// aliases.
inline Taxonomy resolve_aliases(std::span<const FacetKeyword> pool,
                                std::vector<AliasWarning>* warnings = nullptr) {
  if (pool.empty()) throw ValidationError("resolve_aliases: empty pool");

  std::map<Taxonomy::AliasKey, std::vector<const FacetKeyword*>> groups;
  for (const auto& k : pool) {
    validate(k);
    groups[{k.facet_type, normalize(k.canonical_name)}].push_back(&k);
  }

  std::vector<FacetKeyword> merged;
  merged.reserve(groups.size());
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](auto* a, auto* b) { return a->id < b->id; });
    FacetKeyword out = *members.front();
    std::set<std::string> alias_norms;
    std::set<std::string> surfaces = {out.canonical_name};
    std::vector<std::string> aliases;
    auto add_alias = [&](const std::string& a) {
      if (surfaces.count(a)) return;
      if (!alias_norms.insert(normalize(a)).second) return;
      surfaces.insert(a);
      aliases.push_back(a);
    };
    for (const auto& a : out.aliases) add_alias(a);
    for (std::size_t i = 1; i < members.size(); ++i) {
      add_alias(members[i]->canonical_name);
      for (const auto& a : members[i]->aliases) add_alias(a);
      if (members[i]->status == KeywordStatus::kValidated) {
        out.status = KeywordStatus::kValidated;
      }
    }
    out.aliases = std::move(aliases);
    merged.push_back(std::move(out));
  }

  if (warnings) {
    std::map<std::string, std::vector<KeywordId>> by_name;
    for (const auto& k : merged) {
      by_name[normalize(k.canonical_name)].push_back(k.id);
    }
    for (auto& [name, ids] : by_name) {
      if (ids.size() > 1) {
        std::sort(ids.begin(), ids.end());
        warnings->push_back(
            {name, ids, "name shared across facet types; kept separate"});
      }
    }
  }
  return Taxonomy(std::move(merged));
}

inline constexpr std::string_view kTaxonomyFormat = "facetwise.taxonomy";
inline constexpr int kTaxonomyVersion = 1;

// Header line followed by one keyword object per line.
inline void export_taxonomy(const Taxonomy& t, const std::string& path) {
  std::vector<json> lines;
  lines.push_back(json{{"format", kTaxonomyFormat},
                       {"version", kTaxonomyVersion},
                       {"count", t.size()}});
  for (const auto& k : t.keywords()) lines.push_back(json(k));
  write_lines(path, lines);
}

inline Taxonomy load_taxonomy(const std::string& path) {
  std::vector<FacetKeyword> keywords;
  bool header_seen = false;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    if (!header_seen) {
      if (j.value("format", std::string{}) != kTaxonomyFormat) {
        throw ParseError(line, "format", "missing taxonomy header");
      }
      if (j.value("version", 0) != kTaxonomyVersion) {
        throw ParseError(line, "version", "unsupported");
      }
      header_seen = true;
      return;
    }
    keywords.push_back(keyword_from_json(j, line));
  });
  if (!header_seen) throw ParseError(1, "format", "missing taxonomy header");
  try {
    return Taxonomy(std::move(keywords));
  } catch (const ValidationError& e) {
    throw Error(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Curation
// ---------------------------------------------------------------------------

class CandidateGenerator {
 public:
  virtual ~CandidateGenerator() = default;
  virtual std::vector<FacetKeyword> generate(const SeedQuery& seed) const = 0;
};

class JobCountProvider {
 public:
  virtual ~JobCountProvider() = default;
  // Number of postings the query would return. May throw ProviderTimeout.
  virtual std::int64_t job_count(std::string_view query) const = 0;
};

class PopularityProvider {
 public:
  virtual ~PopularityProvider() = default;
  // Traffic frequency of the expanded query. May throw ProviderTimeout.
  virtual double popularity(std::string_view expanded_query) const = 0;
};

inline std::vector<FacetKeyword> generate_candidates(
    const SeedQuery& seed, const CandidateGenerator& generator) {
  if (normalize(seed.text).empty()) {
    throw ValidationError("generate_candidates: empty seed");
  }
  std::vector<FacetKeyword> out;
  try {
    out = generator.generate(seed);
  } catch (const std::exception& e) {
    throw StageError("generation", "seed '" + seed.text + "': " + e.what(),
                     /*retriable=*/true);
  }
  for (auto& k : out) k.status = KeywordStatus::kCandidate;
  return out;
}

struct CurationConfig {
  std::int64_t liquidity_threshold = 50;
  double popularity_threshold = 0.1;
};

enum class CurationStatus {
  kAccepted,
  kRejectedPolicy,
  kRejectedLiquidity,
  kRejectedPopularity,
  kPendingReview
};

inline std::string_view to_string(CurationStatus s) {
  switch (s) {
    case CurationStatus::kAccepted: return "Accepted";
    case CurationStatus::kRejectedPolicy: return "RejectedPolicy";
    case CurationStatus::kRejectedLiquidity: return "RejectedLiquidity";
    case CurationStatus::kRejectedPopularity: return "RejectedPopularity";
    case CurationStatus::kPendingReview: return "PendingReview";
  }
  return "?";
}

struct CurationRecord {
  SeedQuery seed;
  FacetKeyword keyword;
  std::optional<JudgeVerdict> policy_verdict;
  std::optional<std::int64_t> job_count;
  std::optional<double> popularity;
  CurationStatus final_status = CurationStatus::kRejectedPolicy;
  // Set when a stage could not produce an answer: "<stage>: <reason>".
  std::optional<std::string> failure;
};

inline std::string expanded_query(std::string_view seed,
                                  const FacetKeyword& k) {
  return std::string(seed) + " " + k.canonical_name;
}

// Applies policy -> liquidity -> popularity in order. A record stops at the
// first failing stage and carries nothing from later stages. Survivors are
// PendingReview; only the review step may accept them.
inline std::vector<CurationRecord> curate(
    std::span<const FacetKeyword> candidates, const SeedQuery& seed,
    const Judge& judge, const JobCountProvider& jobs,
    const PopularityProvider& traffic, const CurationConfig& cfg) {
  if (cfg.liquidity_threshold < 0 || cfg.popularity_threshold < 0) {
    throw ValidationError("curate: thresholds must be non-negative");
  }
  std::vector<CurationRecord> out;
  out.reserve(candidates.size());
  for (const auto& k : candidates) {
    CurationRecord r{seed, k, {}, {}, {}, CurationStatus::kRejectedPolicy, {}};
    try {
      r.policy_verdict = judge.evaluate(seed.text, std::nullopt, k);
    } catch (const std::exception& e) {
      r.failure = std::string("policy: ") + e.what();
      out.push_back(std::move(r));
      continue;
    }
    if (r.policy_verdict->label != Label::kOkay) {
      out.push_back(std::move(r));
      continue;
    }
    const auto query = expanded_query(seed.text, k);
    r.final_status = CurationStatus::kRejectedLiquidity;
    try {
      r.job_count = jobs.job_count(query);
    } catch (const std::exception& e) {
      r.failure = std::string("liquidity: ") + e.what();
      out.push_back(std::move(r));
      continue;
    }
    if (*r.job_count < cfg.liquidity_threshold) {
      out.push_back(std::move(r));
      continue;
    }
    r.final_status = CurationStatus::kRejectedPopularity;
    try {
      r.popularity = traffic.popularity(query);
    } catch (const std::exception& e) {
      r.failure = std::string("popularity: ") + e.what();
      out.push_back(std::move(r));
      continue;
    }
    if (*r.popularity < cfg.popularity_threshold) {
      out.push_back(std::move(r));
      continue;
    }
    r.final_status = CurationStatus::kPendingReview;
    out.push_back(std::move(r));
  }
  return out;
}

// Re-runs the thresholds on a record; used to check that nothing accepted
// slipped past a filter.
inline bool passes_filters(const CurationRecord& r, const CurationConfig& cfg) {
  return r.policy_verdict && r.policy_verdict->label == Label::kOkay &&
         r.job_count && *r.job_count >= cfg.liquidity_threshold &&
         r.popularity && *r.popularity >= cfg.popularity_threshold &&
         !r.failure;
}

// Human review: PendingReview -> Accepted.
inline CurationRecord accept(CurationRecord r, const CurationConfig& cfg) {
  if (r.final_status != CurationStatus::kPendingReview) {
    throw ValidationError("only PendingReview records can be accepted");
  }
  if (!passes_filters(r, cfg)) {
    throw ValidationError("record for " + r.keyword.id + " fails a filter");
  }
  r.final_status = CurationStatus::kAccepted;
  return r;
}

inline json to_json(const CurationRecord& r) {
  json j{{"seed", {{"text", r.seed.text}, {"source", to_string(r.seed.source)}}},
         {"keyword", r.keyword},
         {"final_status", to_string(r.final_status)}};
  j["policy_verdict"] = r.policy_verdict ? json(*r.policy_verdict) : json(nullptr);
  j["job_count"] = r.job_count ? json(*r.job_count) : json(nullptr);
  j["popularity"] = r.popularity ? json(*r.popularity) : json(nullptr);
  j["failure"] = r.failure ? json(*r.failure) : json(nullptr);
  return j;
}

}  // namespace facetwise
