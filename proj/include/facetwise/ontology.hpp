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

// Synthetic job ontology: occupations, the facets linked to each, and member
// profiles. It is the ground truth behind the oracle judge, the reference
// candidate generator and the job-count / popularity providers.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "facetwise/common.hpp"
#include "facetwise/keyword.hpp"
#include "facetwise/ontology_data.hpp"
#include "facetwise/random.hpp"
#include "facetwise/taxonomy.hpp"

namespace facetwise {

struct OntologyFacet {
  KeywordId id;
  FacetType type = FacetType::kDomainKnowledge;
  std::string name;
  std::string definition;

  bool operator==(const OntologyFacet&) const = default;
};

struct FacetLink {
  KeywordId facet;
  std::int64_t job_count = 0;
  double popularity = 0;

  bool operator==(const FacetLink&) const = default;
};

struct Occupation {
  std::string id;
  std::string title;
  std::string family;
  std::int64_t base_jobs = 0;
  std::vector<FacetLink> links;

  bool operator==(const Occupation&) const = default;
};

class SyntheticOntology {
 public:
  SyntheticOntology() = default;

  SyntheticOntology(std::vector<Occupation> occupations,
                    std::vector<OntologyFacet> facets,
                    std::vector<MemberContext> members, std::uint64_t seed)
      : occupations_(std::move(occupations)),
        facets_(std::move(facets)),
        members_(std::move(members)),
        seed_(seed) {
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      if (!facet_by_id_.emplace(facets_[i].id, i).second) {
        throw ValidationError("duplicate facet id " + facets_[i].id);
      }
      auto [it, fresh] = facet_by_name_.emplace(
          std::pair{facets_[i].type, normalize(facets_[i].name)}, i);
      if (!fresh) {
        throw ValidationError("duplicate facet name " + facets_[i].name);
      }
      names_.insert(normalize(facets_[i].name));
    }
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
      auto& occ = occupations_[i];
      if (!occ_by_id_.emplace(occ.id, i).second) {
        throw ValidationError("duplicate occupation id " + occ.id);
      }
      for (const auto& link : occ.links) {
        if (!facet_by_id_.count(link.facet)) {
          throw ValidationError(occ.id + " links unknown facet " + link.facet);
        }
        links_[i].emplace(link.facet, &link - occ.links.data());
      }
    }
  }

  const std::vector<Occupation>& occupations() const { return occupations_; }
  const std::vector<OntologyFacet>& facets() const { return facets_; }
  const std::vector<MemberContext>& members() const { return members_; }
  std::uint64_t seed() const { return seed_; }

  const Occupation* occupation(std::string_view id) const {
    auto it = occ_by_id_.find(std::string(id));
    return it == occ_by_id_.end() ? nullptr : &occupations_[it->second];
  }

  const OntologyFacet* facet(std::string_view id) const {
    auto it = facet_by_id_.find(std::string(id));
    return it == facet_by_id_.end() ? nullptr : &facets_[it->second];
  }

  const OntologyFacet* facet_by_name(std::string_view name,
                                     FacetType type) const {
    auto it = facet_by_name_.find({type, normalize(name)});
    return it == facet_by_name_.end() ? nullptr : &facets_[it->second];
  }

  // Maps a keyword back to its ontology facet: by id first, then by
  // canonical name or alias within the same facet type.
  const OntologyFacet* facet_for(const FacetKeyword& k) const {
    if (auto* f = facet(k.id); f && f->type == k.facet_type) return f;
    if (auto* f = facet_by_name(k.canonical_name, k.facet_type)) return f;
    for (const auto& a : k.aliases) {
      if (auto* f = facet_by_name(a, k.facet_type)) return f;
    }
    return nullptr;
  }

  // The occupation whose title tokens are all present in the text. Longest
  // title wins; ties go to the earlier occupation. Occupation ids resolve too.
  const Occupation* resolve_occupation(std::string_view text) const {
    if (auto* occ = occupation(text)) return occ;
    const auto query = normalize(text);
    const Occupation* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& occ : occupations_) {
      auto n = tokenize(occ.title).size();
      if (n > best_len && token_multiset_contains(query, occ.title)) {
        best = &occ;
        best_len = n;
      }
    }
    return best;
  }

  const FacetLink* link(const Occupation& occ, std::string_view facet_id) const {
    auto idx = static_cast<std::size_t>(&occ - occupations_.data());
    auto it = links_.find(idx);
    if (it == links_.end()) return nullptr;
    auto l = it->second.find(std::string(facet_id));
    return l == it->second.end() ? nullptr : &occ.links[l->second];
  }

  bool linked(const Occupation& occ, std::string_view facet_id) const {
    return link(occ, facet_id) != nullptr;
  }

  std::vector<const OntologyFacet*> linked_facets(const Occupation& occ,
                                                  FacetType type) const {
    std::vector<const OntologyFacet*> out;
    for (const auto& l : occ.links) {
      auto* f = facet(l.facet);
      if (f->type == type) out.push_back(f);
    }
    return out;
  }

  // Facets whose names appear as contiguous token runs in `text` after the
  // occupation title has been removed. Greedy, longest first.
  std::vector<const OntologyFacet*> facets_in(std::string_view text,
                                              const Occupation* occ) const {
    auto tokens = tokenize(text);
    if (occ) {
      for (const auto& t : tokenize(occ->title)) {
        auto it = std::find(tokens.begin(), tokens.end(), t);
        if (it != tokens.end()) tokens.erase(it);
      }
    }
    std::vector<const OntologyFacet*> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::size_t matched = 0;
      for (std::size_t len = std::min<std::size_t>(6, tokens.size() - i);
           len > 0; --len) {
        std::vector<std::string> run(tokens.begin() + i,
                                     tokens.begin() + i + len);
        auto name = join(run, " ");
        if (!names_.count(name)) continue;
        for (auto t : kAllFacetTypes) {
          if (auto* f = facet_by_name(name, t)) out.push_back(f);
        }
        matched = len;
        break;
      }
      i += matched ? matched : 1;
    }
    return out;
  }

  FacetKeyword keyword(const OntologyFacet& f,
                       KeywordStatus status = KeywordStatus::kValidated) const {
    return FacetKeyword{f.id, f.type, f.name, f.definition, {}, status};
  }

  Taxonomy taxonomy(KeywordStatus status = KeywordStatus::kValidated) const {
    std::vector<FacetKeyword> ks;
    ks.reserve(facets_.size());
    for (const auto& f : facets_) ks.push_back(keyword(f, status));
    return Taxonomy(std::move(ks));
  }

  // Every occupation links at least quota[t] facets of each type.
  void check_quota_feasible(const QuotaConfig& quotas) const {
    for (const auto& occ : occupations_) {
      for (auto t : kAllFacetTypes) {
        if (linked_facets(occ, t).size() < quotas[t]) {
          throw ValidationError(occ.id + " links fewer than " +
                                std::to_string(quotas[t]) + " " +
                                std::string(to_string(t)) + " facets");
        }
      }
    }
  }

  bool operator==(const SyntheticOntology& o) const {
    return occupations_ == o.occupations_ && facets_ == o.facets_ &&
           members_ == o.members_ && seed_ == o.seed_;
  }

 private:
  std::vector<Occupation> occupations_;
  std::vector<OntologyFacet> facets_;
  std::vector<MemberContext> members_;
  std::uint64_t seed_ = 0;
  std::map<std::string, std::size_t> occ_by_id_;
  std::map<std::string, std::size_t> facet_by_id_;
  std::map<std::pair<FacetType, std::string>, std::size_t> facet_by_name_;
  std::set<std::string> names_;
  std::map<std::size_t, std::map<std::string, std::size_t>> links_;
};

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

struct OntologySizes {
  std::size_t occupations = 20;
  std::size_t domain_knowledge = 320;
  std::size_t functions = 40;
  std::size_t industries = 37;
  std::size_t workplace_types = 3;
  std::size_t members = 60;
  // Probability that a linked occupation's title is written into a facet
  // definition. Higher means more lexical overlap between queries and
  // facet text, hence an easier retrieval task.
  double title_overlap = 0.6;
  // Share of long-tail domain facets planted below the liquidity / popularity
  // thresholds.
  double illiquid_rate = 0.3;
  double unpopular_rate = 0.3;
  std::size_t shared_domain_links = 2;
};

namespace detail {

inline std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
  return s;
}

inline std::string pseudo_word(Rng& rng, std::size_t syllables_count) {
  const auto& syl = ontology_data::syllables();
  std::string w;
  for (std::size_t i = 0; i < syllables_count; ++i) w += syl[rng.index(syl.size())];
  return w;
}

inline std::string facet_id(FacetType t, std::size_t n) {
  static constexpr const char* kPrefix[] = {"dk_", "fn_", "in_", "wt_"};
  auto digits = std::to_string(n);
  return kPrefix[type_index(t)] + std::string(4 - std::min<std::size_t>(4, digits.size()), '0') + digits;
}

inline std::string occupation_id(std::size_t n) {
  auto digits = std::to_string(n);
  return "occ_" + std::string(digits.size() < 2 ? 2 - digits.size() : 0, '0') + digits;
}

}  // namespace detail

inline SyntheticOntology generate_ontology(std::uint64_t seed,
                                           const OntologySizes& sizes,
                                           const QuotaConfig& quotas = {}) {
  using detail::capitalize;
  const auto& table = ontology_data::occupations();
  const std::size_t n = sizes.occupations;
  if (n == 0) throw ValidationError("ontology needs at least one occupation");
  if (sizes.domain_knowledge / n < quotas[FacetType::kDomainKnowledge]) {
    throw ValidationError(
        "DomainKnowledge quota " +
        std::to_string(quotas[FacetType::kDomainKnowledge]) +
        " infeasible: " + std::to_string(sizes.domain_knowledge) +
        " facets over " + std::to_string(n) + " occupations");
  }
  const std::pair<FacetType, std::size_t> pooled[] = {
      {FacetType::kFunction, sizes.functions},
      {FacetType::kIndustry, sizes.industries},
      {FacetType::kWorkplaceType, sizes.workplace_types}};
  for (auto [t, total] : pooled) {
    if (total < quotas[t]) {
      throw ValidationError(std::string(to_string(t)) + " quota " +
                            std::to_string(quotas[t]) + " infeasible: only " +
                            std::to_string(total) + " facets");
    }
  }

  Rng rng(seed);
  std::set<std::string> used_names;
  auto unique_name = [&](std::string preferred, std::string_view suffix) {
    if (!preferred.empty() && used_names.insert(normalize(preferred)).second) {
      return preferred;
    }
    for (;;) {
      auto name = capitalize(detail::pseudo_word(rng, 2 + rng.index(2)));
      if (!suffix.empty()) name += " " + std::string(suffix);
      if (used_names.insert(normalize(name)).second) return name;
    }
  };

  std::vector<Occupation> occs(n);
  std::set<std::string> titles;
  for (std::size_t i = 0; i < n; ++i) {
    occs[i].id = detail::occupation_id(i);
    if (i < table.size()) {
      occs[i].title = std::string(table[i].title);
      occs[i].family = std::string(table[i].family);
    } else {
      do {
        occs[i].title = detail::pseudo_word(rng, 3) + " technician";
      } while (!titles.insert(occs[i].title).second);
      occs[i].family = "family_" + std::to_string(i / 3);
    }
    titles.insert(occs[i].title);
    occs[i].base_jobs = rng.range(800, 6000);
  }
  std::map<std::string, std::vector<std::size_t>> families;
  for (std::size_t i = 0; i < n; ++i) families[occs[i].family].push_back(i);

  std::vector<OntologyFacet> facets;
  // Owner occupation (or none) and per-owner slot of every facet.
  std::vector<std::array<std::vector<std::size_t>, 4>> owned(n);
  std::map<std::pair<std::size_t, std::string>, std::size_t> slot_of;

  static constexpr std::string_view kDomainSuffixes[] = {
      "Methods", "Systems", "Analysis", "Techniques", "Standards", "Practice"};
  std::array<std::size_t, 4> per_type{};
  auto add_facet = [&](FacetType t, std::string name) {
    std::size_t k = facets.size();
    facets.push_back({detail::facet_id(t, per_type[type_index(t)]++), t,
                      std::move(name), {}});
    return k;
  };

  auto distribute = [&](FacetType t, std::size_t total) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t count = total / n + (i < total % n ? 1 : 0);
      for (std::size_t j = 0; j < count; ++j) {
        std::string preferred;
        std::string_view suffix;
        if (i < table.size()) {
          const auto& row = table[i];
          if (t == FacetType::kDomainKnowledge && j < row.domain_knowledge.size()) {
            preferred = std::string(row.domain_knowledge[j]);
          } else if (t == FacetType::kFunction && j < row.functions.size()) {
            preferred = std::string(row.functions[j]);
          } else if (t == FacetType::kIndustry && j < row.industries.size()) {
            preferred = std::string(row.industries[j]);
          }
        }
        if (t == FacetType::kDomainKnowledge) suffix = kDomainSuffixes[j % 6];
        if (t == FacetType::kFunction) suffix = "Operations";
        if (t == FacetType::kIndustry) suffix = "Sector";
        auto idx = add_facet(t, unique_name(preferred, suffix));
        owned[i][type_index(t)].push_back(idx);
        slot_of[{i, facets[idx].id}] = j;
      }
    }
  };
  distribute(FacetType::kDomainKnowledge, sizes.domain_knowledge);
  distribute(FacetType::kFunction, sizes.functions);
  distribute(FacetType::kIndustry, sizes.industries);

  std::vector<std::size_t> workplace;
  for (std::size_t j = 0; j < sizes.workplace_types; ++j) {
    const auto& names = ontology_data::workplace_types();
    std::string preferred = j < names.size() ? std::string(names[j]) : "";
    workplace.push_back(add_facet(FacetType::kWorkplaceType,
                                  unique_name(preferred, "Schedule")));
  }

  // Links: own facets, family-owned functions and industries, a few shared
  // domain facets from siblings, then random top-ups to reach the quotas.
  std::vector<std::vector<std::size_t>> linked(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> set;
    auto& out = linked[i];
    auto add = [&](std::size_t f) {
      if (set.insert(f).second) out.push_back(f);
    };
    for (auto f : owned[i][0]) add(f);
    const auto& fam = families[occs[i].family];
    std::vector<std::size_t> sibling_dk;
    for (auto s : fam) {
      if (s == i) continue;
      for (auto f : owned[s][0]) sibling_dk.push_back(f);
    }
    if (sibling_dk.empty()) {
      for (std::size_t s = 0; s < n; ++s) {
        if (s != i) for (auto f : owned[s][0]) sibling_dk.push_back(f);
      }
    }
    for (auto f : rng.sample(sibling_dk, sizes.shared_domain_links)) add(f);

    for (auto t : {FacetType::kFunction, FacetType::kIndustry}) {
      std::size_t before = set.size();
      for (auto s : fam) for (auto f : owned[s][type_index(t)]) add(f);
      std::vector<std::size_t> pool;
      for (std::size_t k = 0; k < facets.size(); ++k) {
        if (facets[k].type == t && !set.count(k)) pool.push_back(k);
      }
      std::size_t have = set.size() - before;
      std::size_t want = quotas[t] + 1;
      if (have < want) {
        for (auto f : rng.sample(pool, want - have)) add(f);
      }
    }

    std::vector<std::size_t> wt;
    if (i < table.size()) {
      for (auto name : table[i].workplace) {
        for (auto k : workplace) {
          if (normalize(facets[k].name) == normalize(name)) wt.push_back(k);
        }
      }
    }
    if (wt.empty()) {
      wt = rng.sample(workplace, 1 + rng.index(std::min<std::size_t>(2, workplace.size())));
    }
    for (auto f : wt) add(f);
  }

  // Definitions mention the name and, with probability title_overlap, the
  // titles of linked occupations and their family.
  std::vector<std::vector<std::size_t>> linked_by(facets.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (auto f : linked[i]) linked_by[f].push_back(i);
  }
  for (std::size_t k = 0; k < facets.size(); ++k) {
    auto& f = facets[k];
    std::string lower = normalize(f.name);
    std::string def;
    switch (f.type) {
      case FacetType::kDomainKnowledge:
        def = "specialized knowledge of " + lower;
        break;
      case FacetType::kFunction:
        def = lower + " job function";
        break;
      case FacetType::kIndustry:
        def = "employers in the " + lower + " industry";
        break;
      case FacetType::kWorkplaceType:
        def = lower + " workplace arrangement";
        break;
    }
    if (f.type != FacetType::kWorkplaceType) {
      std::set<std::string> fams;
      for (auto i : linked_by[k]) {
        if (rng.bernoulli(sizes.title_overlap)) def += " for " + occs[i].title;
        fams.insert(occs[i].family);
      }
      for (const auto& fam : fams) {
        if (rng.bernoulli(sizes.title_overlap)) def += " in " + fam;
      }
    }
    f.definition = std::move(def);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (auto f : linked[i]) {
      FacetLink l{facets[f].id, 0, 0};
      l.job_count = rng.range(60, occs[i].base_jobs);
      l.popularity = 0.15 + 0.85 * rng.uniform();
      auto slot = slot_of.find({i, facets[f].id});
      bool tail = facets[f].type == FacetType::kDomainKnowledge &&
                  slot != slot_of.end() && slot->second >= 12;
      if (tail) {
        if (rng.bernoulli(sizes.illiquid_rate)) {
          l.job_count = rng.range(0, 40);
        } else if (rng.bernoulli(sizes.unpopular_rate)) {
          l.popularity = 0.09 * rng.uniform();
        }
      }
      occs[i].links.push_back(l);
    }
  }

  std::vector<MemberContext> members;
  members.reserve(sizes.members);
  for (std::size_t m = 0; m < sizes.members; ++m) {
    std::size_t i = m % n;
    MemberContext mc;
    mc.preferred_titles.push_back(occs[i].title);
    const auto& fam = families[occs[i].family];
    if (fam.size() > 1 && rng.bernoulli(0.3)) {
      std::size_t s;
      do {
        s = fam[rng.index(fam.size())];
      } while (s == i);
      mc.preferred_titles.push_back(occs[s].title);
    }
    std::vector<std::size_t> inds;
    for (auto f : linked[i]) {
      if (facets[f].type == FacetType::kIndustry) inds.push_back(f);
    }
    for (auto f : rng.sample(inds, 2)) mc.industries.push_back(facets[f].name);
    members.push_back(std::move(mc));
  }

  SyntheticOntology out(std::move(occs), std::move(facets), std::move(members),
                        seed);
  out.check_quota_feasible(quotas);
  return out;
}

// ---------------------------------------------------------------------------
// Reference generator and providers
// ---------------------------------------------------------------------------

// Candidate generator backed by the ontology: a seed resolving to an
// occupation yields exactly its linked facets, plus `distractors` unlinked
// facets drawn deterministically from the rest of the ontology.
class OntologyCandidateGenerator : public CandidateGenerator {
 public:
  explicit OntologyCandidateGenerator(const SyntheticOntology& ontology,
                                      std::size_t distractors = 0)
      : ontology_(ontology), distractors_(distractors) {}

  std::vector<FacetKeyword> generate(const SeedQuery& seed) const override {
    std::vector<FacetKeyword> out;
    const auto* occ = ontology_.resolve_occupation(seed.text);
    if (!occ) return out;
    for (const auto& l : occ->links) {
      out.push_back(ontology_.keyword(*ontology_.facet(l.facet),
                                      KeywordStatus::kCandidate));
    }
    if (distractors_) {
      std::vector<const OntologyFacet*> pool;
      for (const auto& f : ontology_.facets()) {
        if (!ontology_.linked(*occ, f.id)) pool.push_back(&f);
      }
      Rng rng(fnv1a(seed.text, ontology_.seed()));
      for (auto* f : rng.sample(pool, distractors_)) {
        out.push_back(ontology_.keyword(*f, KeywordStatus::kCandidate));
      }
    }
    return out;
  }

 private:
  const SyntheticOntology& ontology_;
  std::size_t distractors_;
};

// Job counts derived from the ontology. A query resolving to an occupation
// returns its base count; each appended facet that the occupation links
// narrows the count to that link's liquidity (halved per extra facet), and
// an unlinked facet collapses it to a handful of postings.
class OntologyJobCounts : public JobCountProvider {
 public:
  explicit OntologyJobCounts(const SyntheticOntology& ontology)
      : ontology_(ontology) {}

  std::int64_t job_count(std::string_view query) const override {
    const auto* occ = ontology_.resolve_occupation(query);
    if (!occ) return 0;
    auto found = ontology_.facets_in(query, occ);
    if (found.empty()) return occ->base_jobs;
    std::int64_t count = occ->base_jobs;
    for (std::size_t i = 0; i < found.size(); ++i) {
      const auto* l = ontology_.link(*occ, found[i]->id);
      if (!l) return static_cast<std::int64_t>(fnv1a(query) % 10);
      count = std::min(count, l->job_count);
    }
    return count >> (found.size() - 1);
  }

 private:
  const SyntheticOntology& ontology_;
};

class OntologyPopularity : public PopularityProvider {
 public:
  explicit OntologyPopularity(const SyntheticOntology& ontology)
      : ontology_(ontology) {}

  double popularity(std::string_view expanded) const override {
    const auto* occ = ontology_.resolve_occupation(expanded);
    if (!occ) return 0.0;
    auto found = ontology_.facets_in(expanded, occ);
    if (found.empty()) return 1.0;
    double p = 1.0;
    for (const auto* f : found) {
      const auto* l = ontology_.link(*occ, f->id);
      p = std::min(p, l ? l->popularity : 0.01);
    }
    return p;
  }

 private:
  const SyntheticOntology& ontology_;
};

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

inline json to_json(const SyntheticOntology& o) {
  json occs = json::array();
  for (const auto& occ : o.occupations()) {
    json links = json::array();
    for (const auto& l : occ.links) {
      links.push_back({{"facet", l.facet},
                       {"job_count", l.job_count},
                       {"popularity", l.popularity}});
    }
    occs.push_back({{"id", occ.id},
                    {"title", occ.title},
                    {"family", occ.family},
                    {"base_jobs", occ.base_jobs},
                    {"links", links}});
  }
  json facets = json::array();
  for (const auto& f : o.facets()) {
    facets.push_back({{"id", f.id},
                      {"facet_type", f.type},
                      {"name", f.name},
                      {"definition", f.definition}});
  }
  json members = json::array();
  for (const auto& m : o.members()) members.push_back(m);
  return json{{"format", "facetwise.ontology"},
              {"seed", o.seed()},
              {"occupations", occs},
              {"facets", facets},
              {"members", members}};
}

inline SyntheticOntology ontology_from_json(const json& j) {
  std::vector<Occupation> occs;
  for (const auto& jo : j.at("occupations")) {
    Occupation occ;
    occ.id = jo.at("id").get<std::string>();
    occ.title = jo.at("title").get<std::string>();
    occ.family = jo.at("family").get<std::string>();
    occ.base_jobs = jo.at("base_jobs").get<std::int64_t>();
    for (const auto& jl : jo.at("links")) {
      occ.links.push_back({jl.at("facet").get<std::string>(),
                           jl.at("job_count").get<std::int64_t>(),
                           jl.at("popularity").get<double>()});
    }
    occs.push_back(std::move(occ));
  }
  std::vector<OntologyFacet> facets;
  for (const auto& jf : j.at("facets")) {
    facets.push_back({jf.at("id").get<std::string>(),
                      jf.at("facet_type").get<FacetType>(),
                      jf.at("name").get<std::string>(),
                      jf.at("definition").get<std::string>()});
  }
  std::vector<MemberContext> members;
  for (const auto& jm : j.at("members")) members.push_back(jm.get<MemberContext>());
  return SyntheticOntology(std::move(occs), std::move(facets),
                           std::move(members), j.at("seed").get<std::uint64_t>());
}

inline void save_ontology(const SyntheticOntology& o, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(o).dump(1) << '\n';
}

inline SyntheticOntology load_ontology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return ontology_from_json(json::parse(in));
}

}  // namespace facetwise
