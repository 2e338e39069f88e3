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

#pragma once

#include <set>
#include <string>

#include "facetwise/judge.hpp"
#include "facetwise/ontology.hpp"

namespace facetwise {

// Rule-based judge over the synthetic ontology.
//
//   C1  the keyword is linked to the occupation the query resolves to.
//   C2  true unless a member is present, one of their titles resolves to an
//       occupation in the query occupation's family, and the keyword is an
//       industry outside the member's listed industries.
//   C3  the keyword's name tokens are not all already in the query.
//
// A query that resolves to no occupation fails C1.
class OracleJudge : public Judge {
 public:
  explicit OracleJudge(const SyntheticOntology& ontology) : ontology_(ontology) {}

  JudgeVerdict evaluate(std::string_view query, const OptionalMember& member,
                        const FacetKeyword& keyword) const override {
    const auto* occ = ontology_.resolve_occupation(query);
    const auto* facet = ontology_.facet_for(keyword);

    bool c1 = occ && facet && ontology_.linked(*occ, facet->id);
    bool c2 = member_plausible(occ, member, keyword);
    bool c3 = !token_multiset_contains(query, keyword.canonical_name);

    std::optional<std::string> rationale;
    if (!c1) {
      rationale = occ ? "C1: '" + keyword.canonical_name +
                            "' is not a facet of " + occ->title
                      : std::string("C1: query does not resolve to a known "
                                    "occupation");
    } else if (!c2) {
      rationale = "C2: industry '" + keyword.canonical_name +
                  "' is inconsistent with the member profile";
    } else if (!c3) {
      rationale = "C3: '" + keyword.canonical_name +
                  "' is already expressed in the query";
    }
    return make_verdict(c1, c2, c3, std::move(rationale));
  }

  bool member_relevant(const Occupation* query_occ,
                       const OptionalMember& member) const {
    if (!query_occ || !member) return false;
    for (const auto& title : member->preferred_titles) {
      const auto* m = ontology_.resolve_occupation(title);
      if (m && m->family == query_occ->family) return true;
    }
    return false;
  }

 private:
  bool member_plausible(const Occupation* occ, const OptionalMember& member,
                        const FacetKeyword& keyword) const {
    if (!member_relevant(occ, member)) return true;
    if (keyword.facet_type != FacetType::kIndustry) return true;
    const auto name = normalize(keyword.canonical_name);
    for (const auto& ind : member->industries) {
      if (normalize(ind) == name) return true;
    }
    return false;
  }

  const SyntheticOntology& ontology_;
};

}  // namespace facetwise
