// Copyright 2026 The ubench Authors.
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

#include <signal.h>

#include <future>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "test_support.h"
#include "ubench/api.h"
#include "ubench/features.h"
#include "ubench/server.h"
#include "ubench/workspace.h"

namespace ubench {
namespace {

using nlohmann::json;

ApiService ToyService() {
  WorkspaceOptions o;
  o.registry_dir = testing::FixturePath("toy");
  auto ws = std::make_shared<const Workspace>(Workspace::Load(o));
  RankerModel none;
  none.schema = FeatureSchema();
  return ApiService(ws, {{LabelKind::kUScore, none}}, kDefaultBaseline);
}

ApiResponse Get(const ApiService& api, const std::string& path,
                std::map<std::string, std::string> query = {}) {
  return api.Handle({"GET", path, std::move(query), ""});
}

ApiResponse Post(const ApiService& api, const std::string& path,
                 const std::string& body) {
  return api.Handle({"POST", path, {}, body});
}

json Payload(const ApiResponse& r) {
  json j = json::parse(r.body);
  CHECK(j["status"] == "ok");
  CHECK(j["registry_digest"].is_string());
  return j["payload"];
}

void ExpectError(const ApiResponse& r, int status) {
  CHECK(r.status == status);
  json j = json::parse(r.body);
  CHECK(j["status"] == "error");
  CHECK(j["error"]["code"] == status);
  CHECK(!j["error"]["message"].get<std::string>().empty());
}

TEST_SUITE("api") {

TEST_CASE("models") {
  ApiService api = ToyService();
  ApiResponse r = Get(api, "/api/v1/models");
  CHECK(r.status == 200);
  CHECK(r.content_type == "application/json");
  json p = Payload(r);
  REQUIRE(p["models"].size() == 3);
  for (const auto& m : p["models"]) {
    CHECK(m.contains("bins"));
    CHECK(m["uscore"].is_object());
  }
}

TEST_CASE("datasets") {
  json p = Payload(Get(ToyService(), "/api/v1/datasets"));
  CHECK(p["datasets"].size() == 4);
  CHECK(p["transfers"] == json::parse(R"([{"source":"DS-A","target":"DS-T"}])"));
}

TEST_CASE("leaderboard") {
  ApiService api = ToyService();
  json p = Payload(Get(api, "/api/v1/leaderboard"));
  REQUIRE(p["entries"].size() == 3);
  CHECK(p["entries"][0]["model"] == "LargeNet");
  CHECK(p["baseline"] == "U-Net");
  json u = Payload(Get(api, "/api/v1/leaderboard",
                       {{"metric", "uscore"}, {"scope", "source"}}));
  CHECK(u["metric"] == "uscore");
  REQUIRE(u["entries"].size() == 3);
  for (std::size_t i = 0; i < u["entries"].size(); ++i) {
    CHECK(u["entries"][i]["rank"] == i + 1);
  }
  json t = Payload(Get(api, "/api/v1/leaderboard", {{"scope", "target"}}));
  CHECK(t["scope"] == "target");
  REQUIRE(t["entries"].size() == 3);
  for (const auto& e : t["entries"]) {
    CHECK(e["per_dataset"].size() == 1);
    CHECK(e["per_dataset"].contains("DS-A->DS-T"));
  }
  ExpectError(Get(api, "/api/v1/leaderboard", {{"metric", "dice"}}), 400);
  ExpectError(Get(api, "/api/v1/leaderboard", {{"scope", "both"}}), 400);
}

TEST_CASE("uscore per model") {
  ApiService api = ToyService();
  json p = Payload(Get(api, "/api/v1/uscore/TinyNet"));
  CHECK(p["model"] == "TinyNet");
  CHECK(p["datasets"].size() == 3);
  CHECK(p["summary"].is_object());
  ExpectError(Get(api, "/api/v1/uscore/Nobody"), 404);
}

TEST_CASE("significance") {
  ApiService api = ToyService();
  json p = Payload(Get(api, "/api/v1/significance"));
  CHECK(p["baseline"] == "U-Net");
  CHECK(p["cells"].size() == 6);
  json other = Payload(Get(api, "/api/v1/significance", {{"baseline", "TinyNet"}}));
  CHECK(other["baseline"] == "TinyNet");
  ExpectError(Get(api, "/api/v1/significance", {{"baseline", "Nobody"}}), 400);
}

TEST_CASE("advise") {
  ApiService api = ToyService();
  json p = Payload(Post(
      api, "/api/v1/advise",
      R"({"modality":"Ultrasound","constraints":{"storage":"Tiny"},"k":5})"));
  REQUIRE(p["recommendations"].size() == 1);
  CHECK(p["recommendations"][0]["model"] == "TinyNet");

  json all = Payload(Post(api, "/api/v1/advise", R"({"dataset":"DS-A"})"));
  CHECK(all["recommendations"].size() == 3);

  ExpectError(Post(api, "/api/v1/advise", "{"), 400);
  ExpectError(Post(api, "/api/v1/advise", "[]"), 400);
  ExpectError(Post(api, "/api/v1/advise", R"({"scale":"Small"})"), 400);
  ExpectError(Post(api, "/api/v1/advise", R"({"modality":"Sonar"})"), 400);
  ExpectError(Post(api, "/api/v1/advise",
                   R"({"modality":"CT","constraints":{"storage":"Huge"}})"),
              400);
  ExpectError(Post(api, "/api/v1/advise", R"({"modality":"CT","k":0})"), 400);
  ExpectError(Post(api, "/api/v1/advise", R"({"modality":"CT","extra":1})"), 400);
  ExpectError(
      Post(api, "/api/v1/advise", R"({"modality":"CT","label_kind":"iou"})"),
      400);
}

TEST_CASE("routing errors") {
  ApiService api = ToyService();
  ExpectError(Get(api, "/api/v1/nothing"), 404);
  ExpectError(Get(api, "/elsewhere"), 404);
  ExpectError(Get(api, "/api/v1/advise"), 405);
  ExpectError(Post(api, "/api/v1/models", "{}"), 405);
}

TEST_CASE("identical requests give identical bytes") {
  ApiService a = ToyService();
  ApiService b = ToyService();
  for (const char* path : {"/api/v1/models", "/api/v1/datasets",
                           "/api/v1/leaderboard", "/api/v1/significance"}) {
    CHECK(Get(a, path).body == Get(b, path).body);
  }
  const char* body = R"({"modality":"Endoscopy","k":2})";
  CHECK(Post(a, "/api/v1/advise", body).body ==
        Post(b, "/api/v1/advise", body).body);
}

TEST_CASE("serves over http until SIGTERM") {
  ApiService api = ToyService();
  // Block before spawning so only the server's waiter receives the signal.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::promise<int> bound;
  ServeOptions options;
  options.port = 0;
  options.on_listening = [&bound](int port) { bound.set_value(port); };
  auto served = std::async(std::launch::async, [&]() { Serve(api, options); });
  auto port_future = bound.get_future();
  REQUIRE(port_future.wait_for(std::chrono::seconds(10)) ==
          std::future_status::ready);
  int port = port_future.get();

  httplib::Client client("127.0.0.1", port);
  auto models = client.Get("/api/v1/models");
  REQUIRE(models);
  CHECK(models->status == 200);
  CHECK(models->body == Get(api, "/api/v1/models").body);
  auto advice = client.Post("/api/v1/advise",
                            R"({"modality":"Ultrasound","constraints":{"storage":"Tiny"}})",
                            "application/json");
  REQUIRE(advice);
  CHECK(json::parse(advice->body)["payload"]["recommendations"].size() == 1);
  auto missing = client.Get("/api/v1/leaderboard?metric=dice");
  REQUIRE(missing);
  CHECK(missing->status == 400);

  kill(getpid(), SIGTERM);
  REQUIRE(served.wait_for(std::chrono::seconds(10)) == std::future_status::ready);
  CHECK_NOTHROW(served.get());
}

}

}  // namespace
}  // namespace ubench
