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

// Command-line front end. Stack settings come from the JSON file named by
// --config or, failing that, FACETWISE_CONFIG; missing fields keep defaults.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "facetwise/eval.hpp"
#include "facetwise/http.hpp"

namespace fw = facetwise;
namespace fs = std::filesystem;
using fw::json;

namespace {

std::string config_path;

fw::StackConfig load_config(const std::string& explicit_path = {}) {
  std::string path = explicit_path.empty() ? config_path : explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("FACETWISE_CONFIG")) path = env;
  }
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw fw::Error("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw fw::Error(path + ": " + e.what());
  }
  return fw::stack_config_from_json(j);
}

fw::OptionalMember parse_member(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return fw::member_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw fw::ValidationError(std::string("--member: ") + e.what());
  }
}

// A keyword file is either a taxonomy export or bare keyword lines.
std::vector<fw::FacetKeyword> load_keywords(const std::string& path) {
  std::vector<fw::FacetKeyword> out;
  bool first = true, is_taxonomy = false;
  fw::read_jsonl(path, [&](std::size_t line, const json& j) {
    if (first) {
      first = false;
      if (j.contains("format")) {
        is_taxonomy = true;
        return;
      }
    }
    out.push_back(fw::keyword_from_json(j, line));
  });
  if (is_taxonomy) return fw::load_taxonomy(path).keywords();
  return out;
}

struct Artifacts {
  std::string taxonomy, encoder, scorer, ontology;
};

void add_artifact_options(CLI::App* cmd, Artifacts& a) {
  cmd->add_option("--taxonomy", a.taxonomy, "taxonomy file")->required();
  cmd->add_option("--encoder", a.encoder, "encoder parameters")->required();
  cmd->add_option("--scorer", a.scorer, "scorer parameters")->required();
  cmd->add_option("--ontology", a.ontology, "ontology backing job counts")->required();
}

// Everything a service holds, with the ontology kept alive for job counts.
struct LoadedService {
  std::shared_ptr<const fw::SyntheticOntology> ontology;
  std::shared_ptr<const fw::SuggestionService> service;
};

LoadedService load_service(const Artifacts& a, const fw::StackConfig& cfg) {
  LoadedService out;
  out.ontology = std::make_shared<const fw::SyntheticOntology>(fw::load_ontology(a.ontology));
  fw::ServingDeps deps;
  deps.taxonomy = std::make_shared<const fw::Taxonomy>(fw::load_taxonomy(a.taxonomy));
  deps.encoder = std::make_shared<const fw::SiameseEncoder>(
      std::make_shared<const fw::EncoderParams>(fw::load_encoder(a.encoder)));
  deps.index = std::make_shared<const fw::FacetIndex>(*deps.taxonomy, *deps.encoder);
  deps.scorer = std::make_shared<const fw::ParametricScorer>(fw::load_scorer(a.scorer));
  deps.jobs = std::shared_ptr<const fw::JobCountProvider>(
      out.ontology, new fw::OntologyJobCounts(*out.ontology));
  deps.cost = cfg.cost;
  deps.prompt = cfg.prompt;
  deps.quotas = cfg.quotas;
  out.service = std::make_shared<const fw::SuggestionService>(std::move(deps));
  return out;
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

// ---------------------------------------------------------------------------

void cmd_gen_corpus(std::uint64_t seed, bool seed_set, const std::string& out_dir) {
  auto cfg = load_config();
  if (seed_set) cfg.seed = seed;
  const auto c = fw::generate_corpus(cfg.seed, cfg.corpus, cfg.quotas);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  fw::save_ontology(c.ontology, dir / "ontology.json");
  fw::export_taxonomy(c.taxonomy, dir / "taxonomy.jsonl");
  fw::save_labeled(dir / "train.jsonl", c.train_examples());
  fw::save_labeled(dir / "held_out.jsonl", c.held_out_examples());
  std::vector<json> queries, pairs, seeds;
  for (const auto& q : c.queries) queries.push_back(fw::to_json(q));
  for (const auto& e : c.examples) {
    pairs.push_back({{"query", e.query},
                     {"member", fw::member_to_json(e.member)},
                     {"keyword_id", e.keyword.id}});
  }
  for (const auto& occ : c.ontology.occupations()) {
    seeds.push_back({{"text", occ.title}, {"source", "ParentOccupation"}});
  }
  fw::write_lines(dir / "queries.jsonl", queries);
  fw::write_lines(dir / "pairs.jsonl", pairs);
  fw::write_lines(dir / "seeds.jsonl", seeds);
  print({{"seed", c.seed},
         {"keywords", c.taxonomy.size()},
         {"queries", c.stats.queries},
         {"held_out_queries", c.stats.held_out_queries},
         {"examples", c.stats.examples},
         {"positive_rate", c.stats.observed_positive_rate},
         {"out", out_dir}});
}

void cmd_curate(const std::string& seeds_path, const std::string& ontology_path,
                const std::string& out_dir, std::size_t distractors,
                const fw::CurationConfig& ccfg) {
  const auto ontology = fw::load_ontology(ontology_path);
  const auto seeds = fw::load_seeds(seeds_path);
  fw::OntologyCandidateGenerator generator(ontology, distractors);
  fw::OracleJudge judge(ontology);
  fw::OntologyJobCounts jobs(ontology);
  fw::OntologyPopularity traffic(ontology);
  std::vector<json> records;
  std::vector<fw::FacetKeyword> pending;
  std::map<std::string, std::size_t> status_counts;
  for (const auto& seed : seeds) {
    const auto cands = fw::generate_candidates(seed, generator);
    for (const auto& r : fw::curate(cands, seed, judge, jobs, traffic, ccfg)) {
      ++status_counts[std::string(fw::to_string(r.final_status))];
      if (r.final_status == fw::CurationStatus::kPendingReview) pending.push_back(r.keyword);
      records.push_back(fw::to_json(r));
    }
  }
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  fw::write_lines(dir / "curation.jsonl", records);
  json summary{{"records", records.size()}, {"status", status_counts}};
  if (!pending.empty()) {
    std::vector<fw::AliasWarning> warnings;
    const auto t = fw::resolve_aliases(pending, &warnings);
    fw::export_taxonomy(t, dir / "taxonomy.jsonl");
    summary["pending_keywords"] = t.size();
    for (const auto& w : warnings) std::cerr << "warning: " << w.normalized_name << ": "
                                             << w.message << '\n';
  }
  print(summary);
}

void cmd_review(const std::string& path, const std::vector<std::string>& approve,
                const std::vector<std::string>& retire, bool approve_all,
                const std::string& out) {
  auto t = fw::load_taxonomy(path);
  if (approve_all) {
    std::vector<fw::FacetKeyword> ks = t.keywords();
    for (auto& k : ks) {
      if (k.status == fw::KeywordStatus::kCandidate) k.status = fw::KeywordStatus::kValidated;
    }
    t = fw::Taxonomy(std::move(ks));
  }
  auto set = [&](const std::string& id, fw::KeywordStatus s) {
    const auto* k = t.find(id);
    if (!k) throw fw::ValidationError("no keyword with id " + id);
    if (k->status != fw::KeywordStatus::kCandidate) {
      throw fw::ValidationError(id + " is " + std::string(fw::to_string(k->status)) +
                                ", not awaiting review");
    }
    t = t.with_status(id, s);
  };
  for (const auto& id : approve) set(id, fw::KeywordStatus::kValidated);
  for (const auto& id : retire) set(id, fw::KeywordStatus::kRetired);
  fw::export_taxonomy(t, out.empty() ? path : out);
  std::size_t validated = 0;
  for (const auto& k : t.keywords()) validated += k.status == fw::KeywordStatus::kValidated;
  print({{"keywords", t.size()}, {"validated", validated}});
}

void cmd_taxonomy_export(const std::string& ontology_path, const std::string& out) {
  const auto t = fw::load_ontology(ontology_path).taxonomy(fw::KeywordStatus::kValidated);
  fw::export_taxonomy(t, out);
  print({{"keywords", t.size()}, {"out", out}});
}

void cmd_taxonomy_load(const std::string& path) {
  const auto t = fw::load_taxonomy(path);
  const auto h = t.type_histogram();
  json histogram;
  for (auto type : fw::kAllFacetTypes) {
    histogram[std::string(fw::to_string(type))] = h[fw::type_index(type)];
  }
  print({{"keywords", t.size()}, {"aliases", t.alias_map().size()}, {"types", histogram}});
}

std::unique_ptr<fw::Judge> make_judge(const std::string& kind,
                                      const fw::SyntheticOntology& ontology,
                                      double flip_rate, std::uint64_t seed) {
  auto oracle = std::make_shared<fw::OracleJudge>(ontology);
  if (kind == "oracle") return std::make_unique<fw::OracleJudge>(ontology);
  if (kind == "noisy") return std::make_unique<fw::NoisyJudge>(oracle, flip_rate, seed);
  throw fw::ValidationError("unknown judge '" + kind + "' (oracle or noisy)");
}

void cmd_label(const std::string& pairs_path, const std::string& judge_kind,
               const std::string& ontology_path, const std::string& taxonomy_path,
               const std::string& out, double flip_rate, std::uint64_t flip_seed) {
  const auto ontology = fw::load_ontology(ontology_path);
  const auto taxonomy = fw::load_taxonomy(taxonomy_path);
  std::vector<fw::JudgePair> pairs;
  fw::read_jsonl(pairs_path, [&](std::size_t line, const json& j) {
    const auto id = fw::require_field<std::string>(j, "keyword_id", line);
    const auto* k = taxonomy.find(id);
    if (!k) throw fw::ParseError(line, "keyword_id", "unknown '" + id + "'");
    pairs.push_back({fw::require_field<std::string>(j, "query", line),
                     fw::member_from_json(j.value("member", json(nullptr))), *k});
  });
  const auto judge = make_judge(judge_kind, ontology, flip_rate, flip_seed);
  std::vector<fw::SkippedItem> skipped;
  const auto labeled = fw::label_dataset(pairs, *judge, &skipped);
  for (const auto& s : skipped) {
    std::cerr << "skipped pair " << s.index << ": " << s.reason << '\n';
  }
  fw::save_labeled(out, labeled);
  std::size_t okay = 0;
  for (const auto& e : labeled) okay += e.verdict.label == fw::Label::kOkay;
  print({{"labeled", labeled.size()}, {"okay", okay}, {"skipped", skipped.size()}});
}

void cmd_kappa(const std::string& a_path, const std::string& b_path) {
  const auto a = fw::load_labeled(a_path), b = fw::load_labeled(b_path);
  if (a.size() != b.size()) {
    throw fw::ValidationError("label files differ in length: " + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()));
  }
  std::vector<fw::Label> la, lb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].query != b[i].query || a[i].keyword.id != b[i].keyword.id ||
        a[i].member != b[i].member) {
      throw fw::ValidationError("label files disagree on item " + std::to_string(i));
    }
    la.push_back(a[i].verdict.label);
    lb.push_back(b[i].verdict.label);
  }
  print({{"n", a.size()}, {"kappa", fw::cohens_kappa(la, lb)}});
}

void cmd_train_encoder(const std::string& corpus, const std::string& out,
                       const std::string& objective) {
  auto cfg = load_config().encoder;
  if (objective == "infonce") {
    cfg.objective = fw::EncoderObjective::kInfoNCE;
  } else if (objective == "bce") {
    cfg.objective = fw::EncoderObjective::kBinaryCrossEntropy;
  } else if (!objective.empty()) {
    throw fw::ValidationError("unknown objective '" + objective + "'");
  }
  const auto examples = fw::load_labeled(corpus);
  fw::TrainHistory history;
  const auto params = fw::train_encoder(examples, cfg, &history);
  fw::save_encoder(params, out);
  print({{"examples", examples.size()},
         {"epoch_loss", history.epoch_loss},
         {"out", out}});
}

void cmd_build_index(const std::string& encoder, const std::string& taxonomy,
                     const std::string& out) {
  const fw::SiameseEncoder enc(
      std::make_shared<const fw::EncoderParams>(fw::load_encoder(encoder)));
  const auto index = fw::build_index(fw::load_taxonomy(taxonomy), enc);
  std::vector<json> lines;
  for (const auto& e : index.entries()) {
    lines.push_back({{"id", e.keyword.id},
                     {"facet_type", e.keyword.facet_type},
                     {"canonical_name", e.keyword.canonical_name},
                     {"embedding", std::vector<double>(e.embedding.values().begin(),
                                                       e.embedding.values().end())}});
  }
  fw::write_lines(out, lines);
  print({{"entries", index.size()}, {"out", out}});
}

void cmd_retrieve(const std::string& query, const std::string& member,
                  const std::string& encoder, const std::string& taxonomy) {
  const auto cfg = load_config();
  const fw::SiameseEncoder enc(
      std::make_shared<const fw::EncoderParams>(fw::load_encoder(encoder)));
  const auto index = fw::build_index(fw::load_taxonomy(taxonomy), enc);
  const auto emb = enc.encode_query(query, parse_member(member));
  for (const auto& c : fw::retrieve_with_quotas(emb, index, cfg.quotas)) {
    print({{"id", c.keyword.id},
           {"facet_type", c.keyword.facet_type},
           {"canonical_name", c.keyword.canonical_name},
           {"similarity", c.retrieval_similarity}});
  }
}

void cmd_train_ranker(const std::string& mode, const std::string& corpus,
                      const std::string& teacher_path, const std::string& out) {
  const auto cfg = load_config();
  const auto examples = fw::load_labeled(corpus);
  const auto inputs = fw::scoring_inputs(examples);
  auto teacher = [&] {
    if (teacher_path.empty()) throw fw::ValidationError("--mode " + mode + " needs --teacher");
    return fw::load_scorer(teacher_path);
  };
  fw::ScorerParams p;
  if (mode == "supervised") {
    p = fw::train_supervised(fw::ScorerParams::random(fw::FeatureMode::kFull, cfg.supervised.seed),
                             examples, cfg.supervised);
  } else if (mode == "distill") {
    p = fw::distill_on_policy(fw::ScorerParams::random(fw::FeatureMode::kFull, cfg.distill.seed),
                              teacher(), inputs, cfg.distill);
  } else if (mode == "compact") {
    auto warm = fw::distill_on_policy(
        fw::ScorerParams::random(fw::FeatureMode::kCompact, cfg.distill.seed), teacher(), inputs,
        cfg.distill);
    p = fw::train_supervised(std::move(warm), examples, cfg.supervised);
  } else {
    throw fw::ValidationError("unknown mode '" + mode + "' (supervised, distill or compact)");
  }
  fw::save_scorer(p, out);
  fw::ParametricScorer scorer(p);
  std::size_t correct = 0;
  for (const auto& e : examples) {
    const bool yes = fw::score_pointwise(e.query, e.member, e.keyword, scorer) > fw::kYesThreshold;
    correct += yes == (e.verdict.label == fw::Label::kOkay);
  }
  print({{"mode", mode},
         {"feature_dim", p.feature_dim},
         {"train_accuracy", static_cast<double>(correct) / examples.size()},
         {"out", out}});
}

void cmd_score(const std::string& query, const std::string& member,
               const std::string& candidates, const std::string& scorer_path) {
  const fw::ParametricScorer scorer(fw::load_scorer(scorer_path));
  const auto m = parse_member(member);
  std::vector<fw::ScoredCandidate> cands;
  for (auto& k : load_keywords(candidates)) cands.push_back({std::move(k), 0.0, std::nullopt});
  auto scored = fw::score_candidates(query, m, cands, scorer);
  std::set<std::string> served;
  for (const auto& c : fw::rank_and_gate(scored)) served.insert(c.keyword.id);
  std::sort(scored.begin(), scored.end(), fw::ranked_before);
  for (const auto& c : scored) {
    print({{"id", c.keyword.id},
           {"canonical_name", c.keyword.canonical_name},
           {"p_yes", *c.p_yes},
           {"served", served.count(c.keyword.id) > 0}});
  }
}

int cmd_serve(const Artifacts& a, const std::string& host, int port,
              const std::string& static_dir) {
  const auto loaded = load_service(a, load_config());
  fw::ApiServer server(loaded.service);
  if (!static_dir.empty() && !server.mount_static(static_dir)) {
    throw fw::Error("cannot mount " + static_dir);
  }
  if (!server.bind(host, port)) throw fw::Error("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "listening on " << host << ":" << port << '\n';
  return server.listen_after_bind() ? 0 : 1;
}

void cmd_bench(const Artifacts& a, const std::string& workload_path,
               const std::string& formulation, const std::string& out) {
  const auto loaded = load_service(a, load_config());
  std::vector<fw::BenchQuery> workload;
  fw::read_jsonl(workload_path, [&](std::size_t line, const json& j) {
    workload.push_back({fw::require_field<std::string>(j, "query", line),
                        fw::member_from_json(j.value("member", json(nullptr)))});
  });
  std::vector<fw::Formulation> fs;
  if (formulation == "pointwise" || formulation == "both") fs.push_back(fw::Formulation::kPointwise);
  if (formulation == "listwise" || formulation == "both") fs.push_back(fw::Formulation::kListwise);
  if (fs.empty()) throw fw::ValidationError("--formulation must be pointwise, listwise or both");
  const auto report = fw::run_bench(workload, *loaded.service, fs);
  if (!out.empty()) fw::write_bench_report(report, out);
  json summary{{"queries", workload.size()}};
  for (const auto& [f, r] : report.results) {
    summary[std::string(fw::to_string(f))] = {{"p95_cost", r.stats.p95},
                                              {"wall_p95_ms", r.wall_p95_ms}};
  }
  if (fs.size() == 2) summary["p95_ratio"] = report.p95_ratio();
  print(summary);
}

void cmd_eval(const std::string& stack_config, const std::string& out, double flip_rate) {
  const auto cfg = load_config(stack_config);
  const auto stack = fw::build_stack(cfg);
  std::unique_ptr<fw::NoisyJudge> secondary;
  if (flip_rate > 0) {
    secondary = std::make_unique<fw::NoisyJudge>(
        std::make_shared<fw::OracleJudge>(stack.corpus->ontology), flip_rate, cfg.seed);
  }
  const auto report = fw::run_offline_eval(stack, secondary.get());
  if (!out.empty()) fw::write_lines(out, {fw::to_json(report)});
  std::cout << fw::summary_table(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"facetwise: facet suggestion pipeline"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "stack config JSON (default: $FACETWISE_CONFIG)");

  std::uint64_t seed = 0;
  std::string out, in, ontology, taxonomy, encoder, scorer, query, member, mode, teacher;
  std::string judge = "oracle", objective, formulation = "both", workload;
  std::string a_path, b_path, seeds, host = "127.0.0.1", static_dir, stack;
  std::vector<std::string> approve, retire;
  bool approve_all = false;
  double flip_rate = 0.1;
  std::uint64_t flip_seed = 1;
  std::size_t distractors = 0;
  int port = 8080;
  fw::CurationConfig ccfg;
  Artifacts artifacts;

  auto* gen = app.add_subcommand("gen-corpus", "generate a synthetic ontology and labeled corpus");
  auto* seed_opt = gen->add_option("--seed", seed, "corpus seed (default from config)");
  gen->add_option("--out", out, "output directory")->required();

  auto* curate = app.add_subcommand("curate", "generate and filter candidate keywords");
  curate->add_option("--seeds", seeds, "seed queries (JSONL)")->required();
  curate->add_option("--ontology", ontology, "ontology file")->required();
  curate->add_option("--out", out, "output directory")->required();
  curate->add_option("--distractors", distractors, "unlinked candidates per seed");
  curate->add_option("--liquidity-threshold", ccfg.liquidity_threshold);
  curate->add_option("--popularity-threshold", ccfg.popularity_threshold);

  auto* review = app.add_subcommand("review", "approve or retire keywords awaiting review");
  review->add_option("--taxonomy", taxonomy, "taxonomy file")->required();
  review->add_option("--approve", approve, "keyword id to validate");
  review->add_option("--retire", retire, "keyword id to retire");
  review->add_flag("--approve-all", approve_all, "validate every candidate");
  review->add_option("--out", out, "write here instead of in place");

  auto* tax = app.add_subcommand("taxonomy", "taxonomy files");
  tax->require_subcommand(1);
  auto* tax_export = tax->add_subcommand("export", "export an ontology's validated keywords");
  tax_export->add_option("--ontology", ontology, "ontology file")->required();
  tax_export->add_option("--out", out, "taxonomy file")->required();
  auto* tax_load = tax->add_subcommand("load", "validate a taxonomy file and summarize it");
  tax_load->add_option("--in", in, "taxonomy file")->required();

  auto* label = app.add_subcommand("label", "label (query, keyword) pairs with a judge");
  label->add_option("--pairs", in, "pairs JSONL {query, member?, keyword_id}")->required();
  label->add_option("--judge", judge, "oracle or noisy");
  label->add_option("--ontology", ontology, "ontology file")->required();
  label->add_option("--taxonomy", taxonomy, "taxonomy file")->required();
  label->add_option("--out", out, "labeled JSONL")->required();
  label->add_option("--flip-rate", flip_rate, "noisy judge flip rate");
  label->add_option("--flip-seed", flip_seed, "noisy judge seed");

  auto* kappa = app.add_subcommand("kappa", "Cohen's kappa between two label files");
  kappa->add_option("--a", a_path)->required();
  kappa->add_option("--b", b_path)->required();

  auto* tenc = app.add_subcommand("train-encoder", "train the retrieval encoder");
  tenc->add_option("--corpus", in, "labeled JSONL")->required();
  tenc->add_option("--out", out, "encoder file")->required();
  tenc->add_option("--objective", objective, "infonce or bce (default from config)");

  auto* bidx = app.add_subcommand("build-index", "embed a taxonomy's validated keywords");
  bidx->add_option("--encoder", encoder)->required();
  bidx->add_option("--taxonomy", taxonomy)->required();
  bidx->add_option("--out", out, "index JSONL")->required();

  auto* retr = app.add_subcommand("retrieve", "quota retrieval for one query");
  retr->add_option("--query", query)->required();
  retr->add_option("--member", member, "member JSON {preferred_titles, industries}");
  retr->add_option("--encoder", encoder)->required();
  retr->add_option("--taxonomy", taxonomy)->required();

  auto* trank = app.add_subcommand("train-ranker", "train a relevance scorer");
  trank->add_option("--mode", mode, "supervised, distill or compact")->required();
  trank->add_option("--corpus", in, "labeled JSONL")->required();
  trank->add_option("--teacher", teacher, "teacher scorer for distill and compact");
  trank->add_option("--out", out, "scorer file")->required();

  auto* score = app.add_subcommand("score", "score candidates for one query");
  score->add_option("--query", query)->required();
  score->add_option("--member", member, "member JSON");
  score->add_option("--candidates", in, "taxonomy or keyword JSONL")->required();
  score->add_option("--scorer", scorer)->required();

  auto* serve = app.add_subcommand("serve", "run the HTTP suggestion API");
  add_artifact_options(serve, artifacts);
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--static", static_dir, "directory served at /");

  auto* bench = app.add_subcommand("bench", "pointwise vs listwise latency benchmark");
  add_artifact_options(bench, artifacts);
  bench->add_option("--workload", workload, "JSONL {query, member?}")->required();
  bench->add_option("--formulation", formulation, "pointwise, listwise or both");
  bench->add_option("--out", out, "bench report JSONL");

  auto* eval = app.add_subcommand("eval", "build a stack from config and evaluate it");
  eval->add_option("--stack", stack, "stack config JSON (default: $FACETWISE_CONFIG)");
  eval->add_option("--out", out, "report JSONL");
  eval->add_option("--secondary-flip", flip_rate, "flip rate of the secondary judge; 0 disables");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) cmd_gen_corpus(seed, seed_opt->count() > 0, out);
    if (*curate) cmd_curate(seeds, ontology, out, distractors, ccfg);
    if (*review) cmd_review(taxonomy, approve, retire, approve_all, out);
    if (*tax_export) cmd_taxonomy_export(ontology, out);
    if (*tax_load) cmd_taxonomy_load(in);
    if (*label) cmd_label(in, judge, ontology, taxonomy, out, flip_rate, flip_seed);
    if (*kappa) cmd_kappa(a_path, b_path);
    if (*tenc) cmd_train_encoder(in, out, objective);
    if (*bidx) cmd_build_index(encoder, taxonomy, out);
    if (*retr) cmd_retrieve(query, member, encoder, taxonomy);
    if (*trank) cmd_train_ranker(mode, in, teacher, out);
    if (*score) cmd_score(query, member, in, scorer);
    if (*serve) return cmd_serve(artifacts, host, port, static_dir);
    if (*bench) cmd_bench(artifacts, workload, formulation, out);
    if (*eval) cmd_eval(stack, out, flip_rate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
