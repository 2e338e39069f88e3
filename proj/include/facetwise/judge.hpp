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

#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "facetwise/keyword.hpp"

namespace facetwise {

enum class Label { kOkay, kPoor };

inline std::string_view to_string(Label l) {
  return l == Label::kOkay ? "Okay" : "Poor";
}

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "Okay") return Label::kOkay;
  if (s == "Poor") return Label::kPoor;
  return std::nullopt;
}

inline void to_json(json& j, Label l) { j = std::string(to_string(l)); }
inline void from_json(const json& j, Label& l) {
  auto parsed = parse_label(j.get<std::string>());
  if (!parsed) throw ValidationError("unknown label: " + j.dump());
  l = *parsed;
}

// Outcome of the three policy axioms. Construct through make_verdict so the
// label always agrees with the axioms.
struct JudgeVerdict {
  Label label = Label::kPoor;
  bool c1_query_faithfulness = false;
  bool c2_member_plausibility = false;
  bool c3_refinement_utility = false;
  std::optional<std::string> rationale;

  bool consistent() const {
    bool all = c1_query_faithfulness && c2_member_plausibility &&
               c3_refinement_utility;
    return (label == Label::kOkay) == all;
  }

  bool operator==(const JudgeVerdict&) const = default;
};

inline JudgeVerdict make_verdict(bool c1, bool c2, bool c3,
                                 std::optional<std::string> rationale = {}) {
  JudgeVerdict v;
  v.c1_query_faithfulness = c1;
  v.c2_member_plausibility = c2;
  v.c3_refinement_utility = c3;
  v.label = (c1 && c2 && c3) ? Label::kOkay : Label::kPoor;
  v.rationale = std::move(rationale);
  return v;
}

inline void to_json(json& j, const JudgeVerdict& v) {
  j = json{{"label", v.label},
           {"c1_query_faithfulness", v.c1_query_faithfulness},
           {"c2_member_plausibility", v.c2_member_plausibility},
           {"c3_refinement_utility", v.c3_refinement_utility},
           {"rationale", v.rationale ? json(*v.rationale) : json(nullptr)}};
}

inline void from_json(const json& j, JudgeVerdict& v) {
  v.c1_query_faithfulness = j.at("c1_query_faithfulness").get<bool>();
  v.c2_member_plausibility = j.at("c2_member_plausibility").get<bool>();
  v.c3_refinement_utility = j.at("c3_refinement_utility").get<bool>();
  v.label = j.at("label").get<Label>();
  if (j.contains("rationale") && !j.at("rationale").is_null()) {
    v.rationale = j.at("rationale").get<std::string>();
  } else {
    v.rationale.reset();
  }
  if (!v.consistent()) {
    throw ValidationError("verdict label disagrees with C1..C3");
  }
}

// A policy judge. Implementations must be safe to call concurrently.
class Judge {
 public:
  virtual ~Judge() = default;
  virtual JudgeVerdict evaluate(std::string_view query,
                                const OptionalMember& member,
                                const FacetKeyword& keyword) const = 0;
};

// Second annotator for agreement studies: repeats `inner` but flips each
// label with probability `flip_rate`. The flip is a pure function of the
// input and seed, so repeated calls agree.
class NoisyJudge : public Judge {
 public:
  NoisyJudge(std::shared_ptr<const Judge> inner, double flip_rate, std::uint64_t seed)
      : inner_(std::move(inner)), flip_rate_(flip_rate), seed_(seed) {
    if (!inner_) throw ValidationError("noisy judge needs an inner judge");
    if (!(flip_rate >= 0 && flip_rate <= 1)) {
      throw ValidationError("flip rate must be in [0, 1]");
    }
  }

  JudgeVerdict evaluate(std::string_view query, const OptionalMember& member,
                        const FacetKeyword& keyword) const override {
    auto v = inner_->evaluate(query, member, keyword);
    const std::string key = std::to_string(seed_) + "|" + std::string(query) + "|" +
                            (member ? serialize_member(*member) : "") + "|" + keyword.id;
    const double u = static_cast<double>(mix64(fnv1a(key)) >> 11) * 0x1.0p-53;
    if (u >= flip_rate_) return v;
    if (v.label == Label::kOkay) {
      return make_verdict(v.c1_query_faithfulness, v.c2_member_plausibility, false,
                          "flipped");
    }
    return make_verdict(true, true, true, "flipped");
  }

 private:
  std::shared_ptr<const Judge> inner_;
  double flip_rate_;
  std::uint64_t seed_;
};

inline JudgeVerdict evaluate(std::string_view query,
                             const OptionalMember& member,
                             const FacetKeyword& keyword, const Judge& judge) {
  if (keyword.status == KeywordStatus::kRetired) {
    throw ValidationError("cannot judge retired keyword " + keyword.id);
  }
  return judge.evaluate(query, member, keyword);
}

struct LabeledExample {
  std::string query;
  OptionalMember member;
  FacetKeyword keyword;
  JudgeVerdict verdict;

  bool operator==(const LabeledExample&) const = default;
};

inline json to_json(const LabeledExample& e) {
  return json{{"query", e.query},
              {"member", member_to_json(e.member)},
              {"keyword", e.keyword},
              {"verdict", e.verdict}};
}

inline LabeledExample labeled_example_from_json(const json& j,
                                                std::size_t line) {
  LabeledExample e;
  e.query = require_field<std::string>(j, "query", line);
  e.member = member_from_json(j.value("member", json(nullptr)));
  if (!j.contains("keyword")) throw ParseError(line, "keyword", "missing");
  e.keyword = keyword_from_json(j.at("keyword"), line);
  try {
    e.verdict = j.at("verdict").get<JudgeVerdict>();
  } catch (const std::exception& ex) {
    throw ParseError(line, "verdict", ex.what());
  }
  return e;
}

inline void save_labeled(const std::string& path,
                         std::span<const LabeledExample> examples) {
  std::vector<json> lines;
  lines.reserve(examples.size());
  for (const auto& e : examples) lines.push_back(to_json(e));
  write_lines(path, lines);
}

inline std::vector<LabeledExample> load_labeled(const std::string& path) {
  std::vector<LabeledExample> out;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    out.push_back(labeled_example_from_json(j, line));
  });
  return out;
}

struct JudgePair {
  std::string query;
  OptionalMember member;
  FacetKeyword keyword;
};

struct SkippedItem {
  std::size_t index;
  std::string reason;
};

// Labels `pairs` in order. A judge failure on one item is recorded in
// `skipped` (when given) and the batch carries on.
inline std::vector<LabeledExample> label_dataset(
    std::span<const JudgePair> pairs, const Judge& judge,
    std::vector<SkippedItem>* skipped = nullptr) {
  if (pairs.empty()) throw ValidationError("label_dataset: no pairs");
  std::vector<LabeledExample> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    try {
      out.push_back({p.query, p.member, p.keyword,
                     evaluate(p.query, p.member, p.keyword, judge)});
    } catch (const std::exception& e) {
      if (skipped) skipped->push_back({i, e.what()});
    }
  }
  return out;
}

// Cohen's kappa over binary labels. Single-class perfect agreement, where
// the formula is 0/0, is defined as 1.
inline double cohens_kappa(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) {
    throw ValidationError("cohens_kappa: length mismatch " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  if (a.empty()) throw ValidationError("cohens_kappa: empty input");
  const double n = static_cast<double>(a.size());
  double agree = 0, a_okay = 0, b_okay = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    a_okay += a[i] == Label::kOkay;
    b_okay += b[i] == Label::kOkay;
  }
  const double p_o = agree / n;
  const double pa = a_okay / n, pb = b_okay / n;
  const double p_e = pa * pb + (1 - pa) * (1 - pb);
  if (p_e >= 1.0) return p_o >= 1.0 ? 1.0 : 0.0;
  return (p_o - p_e) / (1 - p_e);
}

}  // namespace facetwise
