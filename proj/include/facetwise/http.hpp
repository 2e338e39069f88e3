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

// JSON wire API over the suggestion service.
//
//   GET  /v1/health
//   POST /v1/suggest  {query, member?, applied_facets?}
//   POST /v1/refine   {query, applied_facets?, facet}
//
// A facet is {facet_type, value}, or a bare value resolved through the
// taxonomy. Errors come back as {error, stage} with 400 for bad requests,
// 409 for a duplicate facet, 503 for retriable stage failures and 500
// otherwise.

#pragma once

#include <memory>
#include <string>

#include "httplib.h"

#include "facetwise/common.hpp"
#include "facetwise/serving.hpp"

namespace facetwise {

class ApiServer {
 public:
  explicit ApiServer(std::shared_ptr<const SuggestionService> service)
      : service_(std::move(service)) {
    if (!service_) throw ValidationError("api server needs a service");
    routes();
  }

  // Serves files under `dir` at `/`, for the refinement UI bundle.
  bool mount_static(const std::string& dir) { return server_.set_mount_point("/", dir); }

  bool bind(const std::string& host, int port) {
    return server_.bind_to_port(host, port);
  }
  int bind_any_port(const std::string& host) {
    return server_.bind_to_any_port(host);
  }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  bool listen(const std::string& host, int port) { return server_.listen(host, port); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  bool running() const { return server_.is_running(); }

  // Request handling without sockets; returns (status, body).
  std::pair<int, json> handle_suggest(const std::string& body) const {
    return guarded([&] {
      auto j = parse_body(body);
      auto [query, applied] = read_state(j);
      OptionalMember member;
      if (j.contains("member")) member = member_from_json(j["member"]);
      auto resp = service_->suggest(query, member, applied);
      auto out = to_json(resp);
      out["base_query"] = query;
      out["applied_facets"] = applied;
      return std::pair{200, out};
    });
  }

  std::pair<int, json> handle_refine(const std::string& body) const {
    return guarded([&] {
      auto j = parse_body(body);
      auto [query, applied] = read_state(j);
      if (!j.contains("facet")) throw ValidationError("missing field 'facet'");
      auto refined = service_->refine(query, applied);
      refined = apply_facet(std::move(refined), read_facet(j["facet"]));
      return std::pair{200, json(refined)};
    });
  }

  json health() const {
    return json{{"status", "ok"},
                {"keywords", service_->deps().index->size()}};
  }

 private:
  static json parse_body(const std::string& body) {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("request body must be an object");
    return j;
  }

  FacetValue read_facet(const json& j) const {
    if (j.is_object()) {
      try {
        return j.get<FacetValue>();
      } catch (const std::exception& e) {
        throw ValidationError(std::string("bad facet: ") + e.what());
      }
    }
    if (!j.is_string()) throw ValidationError("facet must be an object or string");
    auto value = j.get<std::string>();
    auto hits = service_->deps().taxonomy->lookup_any(value);
    if (hits.empty()) throw ValidationError("unknown facet value '" + value + "'");
    return {hits.front()->facet_type, hits.front()->canonical_name};
  }

  std::pair<std::string, std::vector<FacetValue>> read_state(const json& j) const {
    if (!j.contains("query") || !j["query"].is_string()) {
      throw ValidationError("missing field 'query'");
    }
    std::vector<FacetValue> applied;
    if (j.contains("applied_facets")) {
      if (!j["applied_facets"].is_array()) {
        throw ValidationError("applied_facets must be a list");
      }
      for (const auto& f : j["applied_facets"]) applied.push_back(read_facet(f));
    }
    return {j["query"].get<std::string>(), std::move(applied)};
  }

  template <typename Fn>
  static std::pair<int, json> guarded(Fn&& fn) {
    auto error = [](int status, const std::string& stage, const std::string& msg) {
      return std::pair{status, json{{"error", msg}, {"stage", stage}}};
    };
    try {
      return fn();
    } catch (const DuplicateFacetError& e) {
      return error(409, "refine", e.what());
    } catch (const ValidationError& e) {
      return error(400, "request", e.what());
    } catch (const StageError& e) {
      return error(e.retriable() ? 503 : 500, e.stage(), e.what());
    } catch (const std::exception& e) {
      return error(500, "internal", e.what());
    }
  }

  static void reply(httplib::Response& res, const std::pair<int, json>& r) {
    res.status = r.first;
    res.set_content(r.second.dump(), "application/json");
  }

  void routes() {
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server_.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
    server_.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, {200, health()});
    });
    server_.Post("/v1/suggest", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_suggest(req.body));
    });
    server_.Post("/v1/refine", [this](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_refine(req.body));
    });
  }

  std::shared_ptr<const SuggestionService> service_;
  httplib::Server server_;
};

}  // namespace facetwise
