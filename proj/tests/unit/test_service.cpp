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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "adtquant/formats.hpp"
#include "adtquant/report.hpp"
#include "adtquant/service.hpp"
#include "httplib.h"

using namespace adtquant;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(ADTQUANT_TEST_DATA) + "/" + name);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

Json body_of(const HttpResponse& r) { return Json::parse(r.body); }

std::string create(ApiService& api, const std::string& file) {
  auto r = api.handle("POST", "/api/models", Json{{"format", "dot"}, {"content", read(file)}}.dump());
  EXPECT_EQ(r.status, 201) << r.body;
  return body_of(r)["id"];
}

}  // namespace

TEST(Report, PacPayloadAndListing) {
  const auto g = parse_dot(read("powermeter_pac.dot"));
  AnalysisRequest req;
  req.pac = true;
  const auto j = analysis_payload(g, req);
  EXPECT_EQ(j["goal"], "10");
  EXPECT_EQ(j["deltaRule"], "independent");
  EXPECT_NEAR(j["results"]["10"]["value"].get<double>(), 0.456463, 1e-6);
  EXPECT_NEAR(j["results"]["10"]["intervalLo"].get<double>(), 0.456463 - 0.13046, 1e-5);
  const auto text = analysis_listing(g, req);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "# domain prob (PAC, delta rule independent); basic events assumed mutually independent");
  EXPECT_NE(text.find("\nID 10 p: 0.4564632 ε: 0.1304602 δ: 0.2262191\n"), std::string::npos);
  EXPECT_NE(text.find("\n  ID 19 p: "), std::string::npos);
  EXPECT_NE(text.find("\n    ID 4 p: "), std::string::npos);
}

TEST(Report, PairListing) {
  auto g = parse_dot(read("powermeter_timed.dot"));
  AnalysisRequest req;
  req.domain = Domain::delay_min;
  const auto text = analysis_listing(g, req);
  EXPECT_NE(text.find("ID 10 delay: ("), std::string::npos);
  const auto j = analysis_payload(g, req);
  EXPECT_TRUE(j["results"]["10"]["pair"].contains("succeed"));
}

TEST(Store, SeedIdsRevisionsAndPersistence) {
  const auto dir = std::filesystem::temp_directory_path() / "adtquant_store_test";
  std::filesystem::remove_all(dir);
  {
    ModelStore store(true, dir);
    auto a = store.create(parse_dot(read("powermeter.dot")));
    EXPECT_EQ(a->id, "m1");
    auto b = store.replace("m1", parse_dot(read("powermeter_pac.dot")));
    EXPECT_EQ(b->revision, 2);
    EXPECT_EQ(a->revision, 1) << "earlier snapshots stay untouched";
    EXPECT_EQ(store.replace("nope", a->graph), nullptr);
    EXPECT_TRUE(std::filesystem::exists(dir / "m1.dot"));
  }
  ModelStore reloaded(true, dir);
  ASSERT_NE(reloaded.get("m1"), nullptr);
  EXPECT_EQ(emit_dot(reloaded.get("m1")->graph), emit_dot(parse_dot(read("powermeter_pac.dot"))));
  std::filesystem::remove_all(dir);
}

TEST(Store, RandomIdsAreSixteenHexDigits) {
  ModelStore store;
  const auto id = store.create(parse_dot(read("powermeter.dot")))->id;
  EXPECT_EQ(id.size(), 16u);
  EXPECT_EQ(id.find_first_not_of("0123456789abcdef"), std::string::npos);
}

TEST(Api, ModelLifecycle) {
  ApiService api(true);
  const auto id = create(api, "powermeter.dot");
  EXPECT_EQ(id, "m1");

  auto r = api.handle("GET", "/api/models/m1", "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(body_of(r)["revision"], 1);
  EXPECT_EQ(body_of(r)["dot"], emit_dot(parse_dot(read("powermeter.dot"))));

  r = api.handle("PUT", "/api/models/m1", Json{{"content", read("powermeter_pac.dot")}, {"revision", 1}}.dump());
  EXPECT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(body_of(r)["revision"], 2);
  r = api.handle("PUT", "/api/models/m1", Json{{"content", read("powermeter_pac.dot")}, {"revision", 1}}.dump());
  EXPECT_EQ(r.status, 409);

  r = api.handle("POST", "/api/models/m1/analyze", Json{{"pac", true}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_NEAR(body_of(r)["results"]["10"]["eps"].get<double>(), 0.130461, 2e-4);

  r = api.handle("POST", "/api/models/m1/analyze", Json{{"domain", "cost-min"}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(body_of(r)["code"], "E_MISSING_ANNOTATION");
  EXPECT_EQ(body_of(r)["diagnostics"].size(), 5u);

  r = api.handle("POST", "/api/models/m1/export", Json{{"target", "prism"}}.dump());
  EXPECT_EQ(r.status, 200);
  EXPECT_TRUE(body_of(r)["files"].contains("model.prism"));

  r = api.handle("GET", "/api/models/m1/feedback", "", {{"target", "export-xml"}});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(body_of(r)["diagnostics"][0]["code"], "W_XML_DROPPED");
}

TEST(Api, XmlUploadAndValidationErrors) {
  ApiService api(true);
  auto r = api.handle("POST", "/api/models",
                      Json{{"format", "xml"}, {"content", read("golden/powermeter.xml")}}.dump());
  EXPECT_EQ(r.status, 201) << r.body;

  r = api.handle("POST", "/api/models", Json{{"content", "digraph { a -> b; b [type=AND]; }"}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(body_of(r)["code"], "E_ARITY");

  r = api.handle("POST", "/api/models", Json{{"content", "digraph {"}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(body_of(r)["code"], "E_PARSE");

  r = api.handle("POST", "/api/models", "not json");
  EXPECT_EQ(r.status, 400);
  r = api.handle("POST", "/api/models", Json{{"format", "yaml"}, {"content", ""}}.dump());
  EXPECT_EQ(r.status, 400);
  r = api.handle("POST", "/api/models", Json{{"content", 5}}.dump());
  EXPECT_EQ(r.status, 400);
}

TEST(Api, RoutingErrors) {
  ApiService api(true);
  EXPECT_EQ(api.handle("GET", "/api/models/zzz", "").status, 404);
  EXPECT_EQ(api.handle("GET", "/api/nothing", "").status, 404);
  EXPECT_EQ(api.handle("DELETE", "/api/models", "").status, 405);
  EXPECT_EQ(api.handle("GET", "/api/estimate", "").status, 405);
  const auto r = api.handle("GET", "/api/nothing", "");
  EXPECT_EQ(body_of(r)["status"], 404);
  EXPECT_EQ(body_of(r)["code"], "E_NOT_FOUND");
}

TEST(Api, EstimateAndGenerate) {
  ApiService api(true);
  std::string csv = "outcome\n";
  for (int i = 0; i < 1000; ++i) csv += i < 233 ? "1\n" : "0\n";
  auto r = api.handle("POST", "/api/estimate", Json{{"csv", csv}, {"delta", 0.05}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_NEAR(body_of(r)["eps"].get<double>(), 0.026214, 1e-5);

  r = api.handle("POST", "/api/estimate", Json{{"samples", {1.0, 3.0}}}.dump());
  EXPECT_EQ(r.status, 200);
  r = api.handle("POST", "/api/estimate", Json{{"samples", {1.0}}}.dump());
  EXPECT_EQ(r.status, 422);

  r = api.handle("POST", "/api/generate", Json{{"size", 10}, {"seed", 3}}.dump());
  EXPECT_EQ(r.status, 201);
  const std::string id = body_of(r)["id"];
  EXPECT_EQ(api.store().get(id)->graph.basic_events().size(), 10u);
  r = api.handle("POST", "/api/generate", Json{{"size", 2000000}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(body_of(r)["code"], "E_SIZE_GUARD");
}

TEST(Http, ServesTheApiOverSockets) {
  ApiService api(true);
  ServeOptions options;
  options.port = 0;
  HttpServer server(api, options);
  const int port = server.bind();
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.run(); });

  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/api/models", Json{{"content", read("powermeter.dot")}}.dump(),
                         "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  EXPECT_EQ(res->get_header_value("X-AdtQuant-Version"), std::string(kVersion));

  res = client.Post("/api/models/m1/analyze", "{}", "application/json");
  ASSERT_TRUE(res);
  const auto analysis = Json::parse(res->body);
  EXPECT_EQ(analysis["goal"], "10");
  EXPECT_NEAR(analysis["results"]["10"]["value"].get<double>(), 0.4594491, 1e-7);

  res = client.Get("/api/models/m1/feedback?target=export-prism");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);

  res = client.Get("/api/unknown");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(res->get_header_value("X-AdtQuant-Version"), std::string(kVersion));

  server.stop();
  thread.join();
}
