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

#include "ubench/api.h"

#include <optional>
#include <set>

#include "json_views.h"
#include "ubench/error.h"
#include "ubench/report.h"

namespace ubench {

using json_views::ojson;

namespace {

constexpr char kPrefix[] = "/api/v1/";

// Client error with an HTTP status.
struct ApiError {
  int status;
  std::string message;
};

std::string Param(const ApiRequest& req, const std::string& key,
                  const std::string& fallback) {
  auto it = req.query.find(key);
  return it == req.query.end() || it->second.empty() ? fallback : it->second;
}

Scope ScopeParam(const ApiRequest& req) {
  std::string v = Param(req, "scope", "source");
  auto s = ParseScopeFlag(v);
  if (!s) throw ApiError{400, "scope must be source or target, got '" + v + "'"};
  return *s;
}

std::string Envelope(const std::string& digest, const ojson& payload) {
  ojson j;
  j["status"] = "ok";
  j["registry_digest"] = digest;
  j["payload"] = payload;
  return j.dump();
}

std::string ErrorEnvelope(const std::string& digest, int status,
                          const std::string& message) {
  ojson j;
  j["status"] = "error";
  j["registry_digest"] = digest;
  j["error"] = {{"code", status}, {"message", message}};
  return j.dump();
}

template <typename T, typename Parse>
std::optional<T> OptionalEnum(const ojson& obj, const char* key, Parse parse,
                              const char* allowed) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const ojson& v = obj.at(key);
  if (!v.is_string()) throw ApiError{400, std::string(key) + " must be a string"};
  auto parsed = parse(v.get<std::string>());
  if (!parsed) {
    throw ApiError{400, std::string(key) + " must be one of " + allowed};
  }
  return parsed;
}

std::string StringField(const ojson& obj, const char* key,
                        const std::string& fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  if (!obj.at(key).is_string()) {
    throw ApiError{400, std::string(key) + " must be a string"};
  }
  return obj.at(key).get<std::string>();
}

AdviceQuery ParseAdviceBody(const std::string& body, const Workspace& ws) {
  ojson doc;
  try {
    doc = ojson::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ApiError{400, std::string("body is not JSON: ") + e.what()};
  }
  if (!doc.is_object()) throw ApiError{400, "body must be a JSON object"};
  static const std::set<std::string> kKeys = {
      "modality", "scale",  "shape",      "boundary",
      "constraints", "k", "label_kind", "dataset"};
  for (const auto& [k, v] : doc.items()) {
    if (!kKeys.count(k)) throw ApiError{400, "unknown field '" + k + "'"};
  }
  AdviceQuery q;
  std::string dataset = StringField(doc, "dataset", "");
  if (!dataset.empty()) {
    if (ws.registry().FindDataset(dataset) == nullptr) {
      throw ApiError{400, "unknown dataset '" + dataset + "'"};
    }
    q.traits = TraitsFor(ws.registry(), ws.traits(), dataset);
  }
  q.traits.modality = StringField(doc, "modality", q.traits.modality);
  if (q.traits.modality.empty()) throw ApiError{400, "modality is required"};
  if (!ModalityIndex(q.traits.modality)) {
    throw ApiError{400, "unknown modality '" + q.traits.modality + "'"};
  }
  try {
    q.traits.scale = ParseScaleLabel(
        StringField(doc, "scale", ScaleLabelName(q.traits.scale)));
    q.traits.shape = ParseShapeLabel(
        StringField(doc, "shape", ShapeLabelName(q.traits.shape)));
    q.traits.boundary = ParseBoundaryLabel(
        StringField(doc, "boundary", BoundaryLabelName(q.traits.boundary)));
  } catch (const Error& e) {
    throw ApiError{400, e.what()};
  }
  if (doc.contains("constraints") && !doc.at("constraints").is_null()) {
    const ojson& c = doc.at("constraints");
    if (!c.is_object()) throw ApiError{400, "constraints must be an object"};
    for (const auto& [k, v] : c.items()) {
      if (k != "storage" && k != "compute" && k != "speed") {
        throw ApiError{400, "unknown constraint '" + k + "'"};
      }
    }
    q.storage = OptionalEnum<StorageBin>(c, "storage", ParseStorageBin,
                                         "Tiny, Small, Medium, Large");
    q.compute = OptionalEnum<ComputeBin>(c, "compute", ParseComputeBin,
                                         "Low, Medium, High");
    q.speed = OptionalEnum<SpeedBin>(c, "speed", ParseSpeedBin,
                                     "Slow, Medium, Fast");
  }
  if (doc.contains("k") && !doc.at("k").is_null()) {
    if (!doc.at("k").is_number_integer() || doc.at("k").get<int>() < 1) {
      throw ApiError{400, "k must be a positive integer"};
    }
    q.k = doc.at("k").get<int>();
  }
  auto kind = OptionalEnum<LabelKind>(doc, "label_kind", ParseLabelKind,
                                      "iou, uscore");
  if (kind) q.label_kind = *kind;
  return q;
}

}  // namespace

ApiService::ApiService(std::shared_ptr<const Workspace> workspace,
                       std::map<LabelKind, RankerModel> rankers,
                       std::string default_baseline)
    : workspace_(std::move(workspace)),
      rankers_(std::move(rankers)),
      default_baseline_(std::move(default_baseline)) {}

ApiResponse ApiService::Handle(const ApiRequest& req) const {
  const Workspace& ws = *workspace_;
  const std::string& digest = ws.snapshot().digest();
  const Registry& reg = ws.registry();
  ApiResponse resp;
  try {
    if (req.path.rfind(kPrefix, 0) != 0) throw ApiError{404, "not found"};
    const std::string route = req.path.substr(sizeof(kPrefix) - 1);
    const bool is_get = req.method == "GET";
    const bool is_post = req.method == "POST";
    ojson payload;

    if (route == "models") {
      if (!is_get) throw ApiError{405, "use GET"};
      auto summaries = ws.ModelSummaries();
      payload["models"] = ojson::array();
      for (const auto& m : reg.models) {
        ojson j = json_views::ModelCardJson(m);
        j["bins"] = json_views::BinsJson(DiscretizeModel(m.params, m.flops, m.fps));
        auto it = summaries.find(m.name);
        j["uscore"] = it == summaries.end() ? ojson(nullptr)
                                            : json_views::BreakdownJson(it->second);
        payload["models"].push_back(std::move(j));
      }
    } else if (route == "datasets") {
      if (!is_get) throw ApiError{405, "use GET"};
      payload["datasets"] = ojson::array();
      for (const auto& d : reg.datasets) {
        ojson j = json_views::DatasetCardJson(d);
        auto it = ws.traits().find(d.name);
        j["traits"] = it == ws.traits().end()
                          ? ojson(nullptr)
                          : json_views::TraitsJson(it->second);
        payload["datasets"].push_back(std::move(j));
      }
      payload["transfers"] = ojson::array();
      for (const auto& p : reg.transfers) {
        payload["transfers"].push_back({{"source", p.source}, {"target", p.target}});
      }
    } else if (route == "leaderboard") {
      if (!is_get) throw ApiError{405, "use GET"};
      std::string m = Param(req, "metric", "iou");
      auto metric = ParseLeaderboardMetric(m);
      if (!metric) throw ApiError{400, "metric must be iou or uscore, got '" + m + "'"};
      Scope scope = ScopeParam(req);
      std::string baseline = Param(req, "baseline", default_baseline_);
      LeaderboardReport report;
      report.metric = *metric;
      report.scope = scope;
      report.baseline = reg.FindModel(baseline) ? baseline : "";
      report.entries = ws.Leaderboard(*metric, scope, report.baseline);
      payload = ojson::parse(EmitLeaderboard(report, ReportFormat::kJson));
    } else if (route.rfind("uscore/", 0) == 0) {
      if (!is_get) throw ApiError{405, "use GET"};
      std::string model = route.substr(7);
      if (reg.FindModel(model) == nullptr) {
        throw ApiError{404, "unknown model '" + model + "'"};
      }
      Scope scope = ScopeParam(req);
      std::vector<UScoreBreakdown> rows;
      for (const auto& b : ws.Scores(scope)) {
        if (b.model == model) rows.push_back(b);
      }
      payload["model"] = model;
      payload["scope"] = ScopeFlagName(scope);
      payload["summary"] =
          rows.empty() ? ojson(nullptr) : json_views::BreakdownJson(MacroAverage(rows));
      payload["datasets"] = ojson::array();
      for (const auto& b : rows) {
        payload["datasets"].push_back(json_views::BreakdownJson(b));
      }
    } else if (route == "significance") {
      if (!is_get) throw ApiError{405, "use GET"};
      std::string baseline = Param(req, "baseline", default_baseline_);
      if (reg.FindModel(baseline) == nullptr) {
        throw ApiError{400, "unknown baseline '" + baseline + "'"};
      }
      Scope scope = ScopeParam(req);
      payload["baseline"] = baseline;
      payload["scope"] = ScopeFlagName(scope);
      payload["legend"] = json_views::LegendJson(TierLegend());
      payload["cells"] = ojson::array();
      for (const auto& c : ws.Significance(baseline, scope)) {
        payload["cells"].push_back(json_views::SignificanceCellJson(c));
      }
    } else if (route == "advise") {
      if (!is_post) throw ApiError{405, "use POST"};
      AdviceQuery q = ParseAdviceBody(req.body, ws);
      auto it = rankers_.find(q.label_kind);
      if (it == rankers_.end()) {
        throw ApiError{400, "no ranker loaded for label_kind '" +
                                LabelKindName(q.label_kind) + "'"};
      }
      AdviceResult result = Advise(reg, it->second, q, ws.ModelSummaries());
      payload = json_views::AdviceJson(result, q);
    } else {
      throw ApiError{404, "not found"};
    }
    resp.body = Envelope(digest, payload);
  } catch (const ApiError& e) {
    resp.status = e.status;
    resp.body = ErrorEnvelope(digest, e.status, e.message);
  } catch (const Error& e) {
    resp.status = 422;
    resp.body = ErrorEnvelope(digest, 422, e.what());
  } catch (const std::exception& e) {
    resp.status = 500;
    resp.body = ErrorEnvelope(digest, 500, e.what());
  }
  return resp;
}

}  // namespace ubench
