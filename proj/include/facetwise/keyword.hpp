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
#include <vector>

#include "facetwise/common.hpp"

namespace facetwise {

enum class KeywordStatus { kCandidate, kValidated, kRetired };

inline std::string_view to_string(KeywordStatus s) {
  switch (s) {
    case KeywordStatus::kCandidate: return "Candidate";
    case KeywordStatus::kValidated: return "Validated";
    case KeywordStatus::kRetired: return "Retired";
  }
  return "?";
}

inline std::optional<KeywordStatus> parse_keyword_status(std::string_view s) {
  for (auto v : {KeywordStatus::kCandidate, KeywordStatus::kValidated,
                 KeywordStatus::kRetired}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

inline void to_json(json& j, KeywordStatus s) { j = std::string(to_string(s)); }
inline void from_json(const json& j, KeywordStatus& s) {
  auto parsed = parse_keyword_status(j.get<std::string>());
  if (!parsed) throw ValidationError("unknown keyword status: " + j.dump());
  s = *parsed;
}

using KeywordId = std::string;

// A curated facet value. Ids are opaque and stable; ordering among ids is
// plain lexicographic.
struct FacetKeyword {
  KeywordId id;
  FacetType facet_type = FacetType::kDomainKnowledge;
  std::string canonical_name;
  std::string definition;
  std::vector<std::string> aliases;
  KeywordStatus status = KeywordStatus::kCandidate;

  bool operator==(const FacetKeyword&) const = default;
};

inline void validate(const FacetKeyword& k) {
  if (k.id.empty()) throw ValidationError("keyword id is empty");
  if (normalize(k.canonical_name).empty()) {
    throw ValidationError("keyword " + k.id + ": canonical_name is empty");
  }
  std::set<std::string> seen;
  for (const auto& a : k.aliases) {
    if (!seen.insert(normalize(a)).second) {
      throw ValidationError("keyword " + k.id + ": duplicate alias '" + a +
                            "'");
    }
  }
}

inline void to_json(json& j, const FacetKeyword& k) {
  j = json{{"id", k.id},
           {"facet_type", k.facet_type},
           {"canonical_name", k.canonical_name},
           {"definition", k.definition},
           {"aliases", k.aliases},
           {"status", k.status}};
}

// Strict decode used by the taxonomy loader; reports the offending field.
inline FacetKeyword keyword_from_json(const json& j, std::size_t line) {
  FacetKeyword k;
  k.id = require_field<std::string>(j, "id", line);
  auto type = require_field<std::string>(j, "facet_type", line);
  auto parsed_type = parse_facet_type(type);
  if (!parsed_type) throw ParseError(line, "facet_type", "unknown '" + type + "'");
  k.facet_type = *parsed_type;
  k.canonical_name = require_field<std::string>(j, "canonical_name", line);
  k.definition = j.value("definition", std::string{});
  if (j.contains("aliases")) {
    try {
      k.aliases = j.at("aliases").get<std::vector<std::string>>();
    } catch (const std::exception& e) {
      throw ParseError(line, "aliases", e.what());
    }
  }
  auto status = require_field<std::string>(j, "status", line);
  auto parsed_status = parse_keyword_status(status);
  if (!parsed_status) throw ParseError(line, "status", "unknown '" + status + "'");
  k.status = *parsed_status;
  if (k.id.empty()) throw ParseError(line, "id", "empty");
  if (normalize(k.canonical_name).empty()) {
    throw ParseError(line, "canonical_name", "empty after normalization");
  }
  try {
    validate(k);
  } catch (const ValidationError& e) {
    throw ParseError(line, "aliases", e.what());
  }
  return k;
}

inline void from_json(const json& j, FacetKeyword& k) {
  k = keyword_from_json(j, 0);
}

}  // namespace facetwise
