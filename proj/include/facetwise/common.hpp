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

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace facetwise {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or invariant violation on caller-supplied data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed persisted record. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message)
      : Error("line " + std::to_string(line) + ": field '" + field +
              "': " + message),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Failure inside a named pipeline stage ("generation", "liquidity",
// "retrieval", "scoring", ...).
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message,
             bool retriable = false)
      : Error(stage + ": " + message),
        stage_(std::move(stage)),
        retriable_(retriable) {}

  const std::string& stage() const { return stage_; }
  bool retriable() const { return retriable_; }

 private:
  std::string stage_;
  bool retriable_;
};

// Thrown by providers (job counts, popularity) when the backing call does not
// answer in time.
class ProviderTimeout : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

// Lowercase, strip ASCII punctuation, collapse whitespace runs, trim.
// Bytes >= 0x80 pass through so UTF-8 names survive.
inline std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char raw : text) {
    auto c = static_cast<unsigned char>(raw);
    if (c < 0x80 && std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (c < 0x80 && std::ispunct(c)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : raw);
  }
  return out;
}

inline std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Normalized word tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  return split_whitespace(normalize(text));
}

inline std::size_t word_count(std::string_view text) {
  return split_whitespace(text).size();
}

// True when every token of `inner` occurs in `outer` at least as many times.
inline bool token_multiset_contains(std::string_view outer,
                                    std::string_view inner) {
  std::map<std::string, int> counts;
  for (auto& t : tokenize(outer)) ++counts[t];
  for (auto& t : tokenize(inner)) {
    if (--counts[t] < 0) return false;
  }
  return true;
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// FNV-1a, 64 bit. Stable across platforms, unlike std::hash.
inline std::uint64_t fnv1a(std::string_view text,
                           std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// SplitMix64 finalizer; spreads low-entropy differences across all bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Facet types
// ---------------------------------------------------------------------------

enum class FacetType { kDomainKnowledge, kFunction, kIndustry, kWorkplaceType };

inline constexpr std::array<FacetType, 4> kAllFacetTypes = {
    FacetType::kDomainKnowledge, FacetType::kFunction, FacetType::kIndustry,
    FacetType::kWorkplaceType};

inline std::string_view to_string(FacetType t) {
  switch (t) {
    case FacetType::kDomainKnowledge: return "DomainKnowledge";
    case FacetType::kFunction: return "Function";
    case FacetType::kIndustry: return "Industry";
    case FacetType::kWorkplaceType: return "WorkplaceType";
  }
  return "?";
}

inline std::optional<FacetType> parse_facet_type(std::string_view s) {
  for (auto t : kAllFacetTypes) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

inline std::size_t type_index(FacetType t) { return static_cast<std::size_t>(t); }

inline void to_json(json& j, FacetType t) { j = std::string(to_string(t)); }
inline void from_json(const json& j, FacetType& t) {
  auto parsed = parse_facet_type(j.get<std::string>());
  if (!parsed) throw ValidationError("unknown facet type: " + j.dump());
  t = *parsed;
}

// Per-type candidate counts for quota retrieval.
struct QuotaConfig {
  std::array<std::size_t, 4> counts = {16, 5, 5, 1};

  std::size_t operator[](FacetType t) const { return counts[type_index(t)]; }
  std::size_t total() const {
    return counts[0] + counts[1] + counts[2] + counts[3];
  }
};

// ---------------------------------------------------------------------------
// Member context
// ---------------------------------------------------------------------------

struct MemberContext {
  std::vector<std::string> preferred_titles;
  std::vector<std::string> industries;

  bool operator==(const MemberContext&) const = default;
};

using OptionalMember = std::optional<MemberContext>;

// "titles: a, b; industries: c, d". The empty member serializes to "".
inline std::string serialize_member(const MemberContext& m) {
  if (m.preferred_titles.empty() && m.industries.empty()) return {};
  return "titles: " + join(m.preferred_titles, ", ") +
         "; industries: " + join(m.industries, ", ");
}

inline void to_json(json& j, const MemberContext& m) {
  j = json{{"preferred_titles", m.preferred_titles},
           {"industries", m.industries}};
}
inline void from_json(const json& j, MemberContext& m) {
  m.preferred_titles =
      j.value("preferred_titles", std::vector<std::string>{});
  m.industries = j.value("industries", std::vector<std::string>{});
}

inline json member_to_json(const OptionalMember& m) {
  return m ? json(*m) : json(nullptr);
}
inline OptionalMember member_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<MemberContext>();
}

// ---------------------------------------------------------------------------
// Line-delimited JSON
// ---------------------------------------------------------------------------

// Calls `fn(line_number, object)` for every non-blank line. JSON syntax
// errors and non-object lines become ParseError.
inline void read_jsonl(const std::string& path,
                       const std::function<void(std::size_t, const json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, "<record>", e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "<record>", "not an object");
    fn(line_no, j);
  }
}

// Field accessor that reports the line and field name on failure.
template <typename T>
T require_field(const json& j, const char* field, std::size_t line) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    throw ParseError(line, field, "missing");
  }
  try {
    return it->get<T>();
  } catch (const std::exception& e) {
    throw ParseError(line, field, e.what());
  }
}

inline void write_lines(const std::string& path,
                        const std::vector<json>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& r : records) out << r.dump() << '\n';
  if (!out) throw Error("write failed: " + path);
}

}  // namespace facetwise
