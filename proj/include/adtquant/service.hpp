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

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "adtquant/graph.hpp"

namespace httplib {
class Server;
}

namespace adtquant {

inline constexpr std::string_view kVersion = "0.1.0";

struct ModelRecord {
  std::string id;
  AdtGraph graph;
  std::string created_at;
  int revision = 1;
};

/// In-memory model store, optionally mirrored to a directory of canonical DOT files.
/// Readers get immutable snapshots; a replace publishes a new record.
class ModelStore {
 public:
  /// `seed_ids` yields m1, m2, ... instead of random tokens (for reproducible tests).
  explicit ModelStore(bool seed_ids = false,
                      std::optional<std::filesystem::path> data_dir = std::nullopt);

  std::shared_ptr<const ModelRecord> create(AdtGraph graph);
  std::shared_ptr<const ModelRecord> get(const std::string& id) const;
  /// Returns nullptr for an unknown id. Throws AdtError (E_IO) if persistence fails.
  std::shared_ptr<const ModelRecord> replace(const std::string& id, AdtGraph graph);
  std::size_t size() const;

 private:
  std::string next_id();
  void persist(const ModelRecord& record) const;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const ModelRecord>> records_;
  bool seed_ids_;
  std::uint64_t counter_ = 0;
  std::uint64_t random_state_;
  std::optional<std::filesystem::path> data_dir_;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// The JSON API, independent of any socket layer. docs/api.md lists the endpoints.
class ApiService {
 public:
  explicit ApiService(bool seed_ids = false,
                      std::optional<std::filesystem::path> data_dir = std::nullopt);

  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body,
                      const std::map<std::string, std::string>& query = {});

  ModelStore& store() { return store_; }

 private:
  ModelStore store_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> static_dir;
};

/// HTTP front end for an ApiService. Every response carries X-AdtQuant-Version.
class HttpServer {
 public:
  HttpServer(ApiService& api, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind();
  /// Serves requests until stop() is called. Call after bind().
  bool run();
  void stop();

 private:
  ServeOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

/// bind() + run(). Returns false if binding failed.
bool serve(ApiService& api, const ServeOptions& options);

}  // namespace adtquant
