/* Copyright 2026 The adtquant Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "adtquant/service.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "adtquant/estimation.hpp"
#include "adtquant/formats.hpp"
#include "adtquant/report.hpp"
#include "adtquant/rng.hpp"
#include "httplib.h"

namespace adtquant {

namespace {

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

// --- store -------------------------------------------------------------------

ModelStore::ModelStore(bool seed_ids, std::optional<std::filesystem::path> data_dir)
    : seed_ids_(seed_ids), random_state_(std::random_device{}()), data_dir_(std::move(data_dir)) {
  random_state_ = (random_state_ << 32) ^ std::random_device{}();
  if (!data_dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*data_dir_, ec);
  if (ec) throw AdtError(codes::kIo, "cannot create " + data_dir_->string() + ": " + ec.message());
  for (const auto& entry : std::filesystem::directory_iterator(*data_dir_)) {
    if (entry.path().extension() != ".dot") continue;
    std::ifstream in(entry.path());
    std::stringstream text;
    text << in.rdbuf();
    auto record = std::make_shared<ModelRecord>();
    record->id = entry.path().stem().string();
    record->graph = parse_dot(text.str());
    record->created_at = now_iso8601();
    records_[record->id] = std::move(record);
  }
}

std::string ModelStore::next_id() {
  if (seed_ids_) return "m" + std::to_string(++counter_);
  std::string id;
  do {
    SplitMix64 rng(random_state_);
    random_state_ = rng.next();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng.next()));
    id = buf;
  } while (records_.count(id));
  return id;
}

void ModelStore::persist(const ModelRecord& record) const {
  if (!data_dir_) return;
  const auto path = *data_dir_ / (record.id + ".dot");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << emit_dot(record.graph);
  if (!out) throw AdtError(codes::kIo, "cannot write " + path.string());
}

std::shared_ptr<const ModelRecord> ModelStore::create(AdtGraph graph) {
  std::lock_guard lock(mutex_);
  auto record = std::make_shared<ModelRecord>();
  record->id = next_id();
  record->graph = std::move(graph);
  record->created_at = now_iso8601();
  persist(*record);
  records_[record->id] = record;
  return record;
}

std::shared_ptr<const ModelRecord> ModelStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find(id);
  return it == records_.end() ? nullptr : it->second;
}

std::shared_ptr<const ModelRecord> ModelStore::replace(const std::string& id, AdtGraph graph) {
  std::lock_guard lock(mutex_);
  auto it = records_.find(id);
  if (it == records_.end()) return nullptr;
  auto record = std::make_shared<ModelRecord>(*it->second);
  record->graph = std::move(graph);
  ++record->revision;
  persist(*record);
  it->second = record;
  return record;
}

std::size_t ModelStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

// --- API -------------------------------------------------------------------------

namespace {

struct ApiError {
  int status;
  std::string code;
  std::string message;
  Diagnostics diagnostics;
};

HttpResponse json_response(int status, const Json& body) { return {status, body.dump(), "application/json"}; }

HttpResponse error_response(const ApiError& e) {
  Json body{{"status", e.status}, {"code", e.code}, {"message", e.message}};
  if (!e.diagnostics.empty()) body["diagnostics"] = to_json(e.diagnostics);
  return json_response(e.status, body);
}

[[noreturn]] void bad_request(const std::string& message) {
  throw ApiError{400, std::string(codes::kBadRequest), message, {}};
}

Json parse_body(const std::string& body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) bad_request("request body must be a JSON object");
  return j;
}

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) bad_request(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const Json::exception&) {
    bad_request(std::string("field '") + name + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& j, const char* name, T fallback) {
  return j.contains(name) && !j.at(name).is_null() ? field<T>(j, name) : fallback;
}

/// Parses and validates model content; invalid models are rejected with 422.
AdtGraph model_from(const Json& body) {
  const auto format = field_or<std::string>(body, "format", "dot");
  const auto content = field<std::string>(body, "content");
  AdtGraph graph;
  if (format == "dot") {
    graph = parse_dot(content);
  } else if (format == "xml") {
    graph = parse_adtool_xml(content);
  } else {
    bad_request("format must be \"dot\" or \"xml\"");
  }
  if (auto d = validate(graph); has_errors(d)) throw AdtError(std::move(d));
  return graph;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

}  // namespace

ApiService::ApiService(bool seed_ids, std::optional<std::filesystem::path> data_dir)
    : store_(seed_ids, std::move(data_dir)) {}

HttpResponse ApiService::handle(const std::string& method, const std::string& path,
                                const std::string& body,
                                const std::map<std::string, std::string>& query) {
  try {
    const auto p = split_path(path);
    auto route = [&](std::initializer_list<const char*> shape) {
      if (p.size() != shape.size()) return false;
      std::size_t i = 0;
      for (const char* s : shape) {
        if (std::string_view(s) != "*" && p[i] != s) return false;
        ++i;
      }
      return true;
    };
    auto method_is = [&](const char* m) {
      if (method != m) throw ApiError{405, std::string(codes::kBadRequest), "method not allowed", {}};
    };
    auto record_for = [&](const std::string& id) {
      auto r = store_.get(id);
      if (!r) throw ApiError{404, std::string(codes::kNotFound), "unknown model '" + id + "'", {}};
      return r;
    };

    if (route({"api", "models"})) {
      method_is("POST");
      auto record = store_.create(model_from(parse_body(body)));
      return json_response(201, Json{{"id", record->id},
                                     {"revision", record->revision},
                                     {"diagnostics", to_json(validate(record->graph))}});
    }
    if (route({"api", "models", "*"})) {
      if (method == "GET") {
        auto r = record_for(p[2]);
        return json_response(200, Json{{"id", r->id},
                                       {"dot", emit_dot(r->graph)},
                                       {"revision", r->revision},
                                       {"createdAt", r->created_at}});
      }
      method_is("PUT");
      const Json j = parse_body(body);
      auto current = record_for(p[2]);
      if (j.contains("revision") && field<int>(j, "revision") != current->revision) {
        throw ApiError{409, std::string(codes::kBadRequest),
                       "revision " + std::to_string(field<int>(j, "revision")) +
                           " is stale; current revision is " + std::to_string(current->revision),
                       {}};
      }
      auto record = store_.replace(p[2], model_from(j));
      if (!record) throw ApiError{404, std::string(codes::kNotFound), "unknown model '" + p[2] + "'", {}};
      return json_response(200, Json{{"revision", record->revision},
                                     {"diagnostics", to_json(validate(record->graph))}});
    }
    if (route({"api", "models", "*", "analyze"})) {
      method_is("POST");
      const Json j = parse_body(body);
      auto record = record_for(p[2]);
      AnalysisRequest request;
      auto domain = parse_domain(field_or<std::string>(j, "domain", "prob"));
      if (!domain) bad_request("unknown domain");
      request.domain = *domain;
      request.pac = field_or<bool>(j, "pac", false);
      auto rule = parse_delta_rule(field_or<std::string>(j, "deltaRule", "independent"));
      if (!rule) bad_request("deltaRule must be \"independent\" or \"union\"");
      request.delta_rule = *rule;
      request.exact_leaves = field_or<bool>(j, "exactLeaves", false);
      return json_response(200, analysis_payload(record->graph, request));
    }
    if (route({"api", "models", "*", "export"})) {
      method_is("POST");
      const Json j = parse_body(body);
      auto record = record_for(p[2]);
      auto target = parse_export_target(field<std::string>(j, "target"));
      if (!target) bad_request("target must be \"prism\" or \"uppaal\"");
      std::optional<double> horizon;
      if (j.contains("horizon") && !j["horizon"].is_null()) horizon = field<double>(j, "horizon");
      return json_response(200, to_json(export_model(record->graph, *target, horizon)));
    }
    if (route({"api", "models", "*", "feedback"})) {
      method_is("GET");
      auto record = record_for(p[2]);
      auto it = query.find("target");
      if (it == query.end()) bad_request("query parameter 'target' is required");
      auto target = parse_target(it->second);
      if (!target) bad_request("unknown target '" + it->second + "'");
      return json_response(200, Json{{"diagnostics", to_json(feedback(record->graph, *target))}});
    }
    if (route({"api", "estimate"})) {
      method_is("POST");
      const Json j = parse_body(body);
      EstimateRequest request;
      if (j.contains("csv")) {
        request.samples = parse_csv_samples(field<std::string>(j, "csv"));
      } else {
        request.samples.values = field<std::vector<double>>(j, "samples");
      }
      request.delta = field_or<double>(j, "delta", 0.05);
      return json_response(200, to_json(estimate_gaussian(request)));
    }
    if (route({"api", "generate"})) {
      method_is("POST");
      const Json j = parse_body(body);
      const auto size = field<std::int64_t>(j, "size");
      if (size > 1'000'000) {
        throw AdtError(codes::kSizeGuard, "size is limited to 1000000 leaves");
      }
      const auto seed = field_or<std::uint64_t>(j, "seed", 0);
      auto record = store_.create(gen_benchmark(size, seed));
      return json_response(201, Json{{"id", record->id}, {"revision", record->revision}});
    }
    throw ApiError{404, std::string(codes::kNotFound), "no such endpoint: " + path, {}};
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const AdtError& e) {
    const int status = e.code() == codes::kIo ? 500 : 422;
    return error_response(ApiError{status, e.code(), e.what(), e.diagnostics()});
  }
}

HttpServer::HttpServer(ApiService& api, ServeOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    auto r = api.handle(req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server_->set_default_headers({{"X-AdtQuant-Version", std::string(kVersion)}});
  server_->Get("/api/.*", handler);
  server_->Post("/api/.*", handler);
  server_->Put("/api/.*", handler);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind() {
  if (options_.static_dir && !server_->set_mount_point("/", options_.static_dir->string())) {
    return -1;
  }
  if (options_.port == 0) return server_->bind_to_any_port(options_.host);
  return server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
}

bool HttpServer::run() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

bool serve(ApiService& api, const ServeOptions& options) {
  HttpServer server(api, options);
  if (server.bind() < 0) return false;
  return server.run();
}

}  // namespace adtquant
