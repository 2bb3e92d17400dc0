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

#include "json_views.h"

#include <cmath>

namespace ubench::json_views {

ojson Number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ojson ModelCardJson(const ModelCard& card) {
  ojson j;
  j["name"] = card.name;
  j["family"] = FamilyName(card.family);
  j["year"] = card.year;
  j["venue"] = card.venue;
  j["deep_supervision"] = card.deep_supervision;
  j["pretrained"] = card.pretrained;
  j["params_m"] = card.params;
  j["flops_g"] = card.flops;
  j["fps"] = card.fps;
  return j;
}

ojson DatasetCardJson(const DatasetCard& card) {
  ojson j;
  j["name"] = card.name;
  j["modality"] = card.modality;
  j["role"] = RoleName(card.role);
  j["class_count"] = card.class_count;
  return j;
}

ojson BinsJson(const ModelBins& bins) {
  ojson j;
  j["storage"] = StorageBinName(bins.storage);
  j["compute"] = ComputeBinName(bins.compute);
  j["speed"] = SpeedBinName(bins.speed);
  return j;
}

ojson BreakdownJson(const UScoreBreakdown& b) {
  ojson j;
  if (!b.model.empty()) j["model"] = b.model;
  if (!b.dataset.empty()) j["dataset"] = b.dataset;
  j["scope"] = ScopeName(b.scope);
  j["raw"] = {{"iou", b.raw.accuracy},
              {"params_m", b.raw.params},
              {"flops_g", b.raw.flops},
              {"fps", b.raw.fps}};
  j["a"] = b.a;
  j["p"] = b.p;
  j["g"] = b.g;
  j["s"] = b.s;
  j["eff"] = b.eff;
  j["u"] = b.u;
  j["weights"] = b.weights;
  j["alpha"] = b.alpha;
  return j;
}

ojson TierJson(const SignificanceTier& tier) {
  return {{"tier", TierName(tier.tier)},
          {"direction", DirectionName(tier.direction)}};
}

ojson TTestJson(const TTestResult& t) {
  ojson j;
  j["t"] = Number(t.t_stat);
  j["df"] = t.df;
  j["p"] = t.p_two_sided;
  j["n"] = t.n;
  j["mean_diff"] = t.mean_diff;
  j["degenerate"] = t.degenerate;
  return j;
}

ojson SignificanceCellJson(const SignificanceCell& cell) {
  ojson j;
  j["model"] = cell.model;
  j["dataset"] = cell.dataset;
  j["scope"] = ScopeName(cell.scope);
  j["variant_mean"] = cell.variant_mean;
  j["baseline_mean"] = cell.baseline_mean;
  j["test"] = cell.test ? TTestJson(*cell.test) : ojson(nullptr);
  j["tier"] = TierName(cell.tier.tier);
  j["direction"] = DirectionName(cell.tier.direction);
  return j;
}

ojson LeaderboardEntryJson(const LeaderboardEntry& e) {
  ojson j;
  j["rank"] = e.rank;
  j["model"] = e.model;
  j["value"] = e.value;
  j["per_dataset"] = ojson::object();
  for (const auto& [k, v] : e.per_dataset) j["per_dataset"][k] = v;
  j["tier"] = e.tier ? TierJson(*e.tier) : ojson(nullptr);
  j["per_dataset_tier"] = ojson::object();
  for (const auto& [k, t] : e.per_dataset_tier) {
    j["per_dataset_tier"][k] = TierJson(t);
  }
  return j;
}

ojson LegendJson(const TierLegend& legend) {
  static const Tier kTiers[4] = {Tier::kP0001, Tier::kP001, Tier::kP01,
                                 Tier::kP05};
  ojson arr = ojson::array();
  for (int i = 0; i < 4; ++i) {
    arr.push_back({{"tier", TierName(kTiers[i])},
                   {"p_below", legend.thresholds[i]},
                   {"stars", 4 - i}});
  }
  return arr;
}

ojson TraitsJson(const DatasetTraits& t) {
  return {{"modality", t.modality},
          {"scale", ScaleLabelName(t.scale)},
          {"shape", ShapeLabelName(t.shape)},
          {"boundary", BoundaryLabelName(t.boundary)}};
}

ojson RecommendationJson(const Recommendation& r) {
  ojson j;
  j["rank"] = r.rank;
  j["model"] = r.model;
  j["family"] = FamilyName(r.family);
  j["score"] = r.score;
  j["bins"] = BinsJson(r.bins);
  j["params_m"] = r.params;
  j["flops_g"] = r.flops;
  j["fps"] = r.fps;
  j["uscore"] = r.uscore ? BreakdownJson(*r.uscore) : ojson(nullptr);
  return j;
}

ojson AdviceJson(const AdviceResult& result, const AdviceQuery& query) {
  ojson q;
  q["traits"] = TraitsJson(query.traits);
  ojson c = ojson::object();
  if (query.storage) c["storage"] = StorageBinName(*query.storage);
  if (query.compute) c["compute"] = ComputeBinName(*query.compute);
  if (query.speed) c["speed"] = SpeedBinName(*query.speed);
  q["constraints"] = c;
  q["k"] = query.k;
  q["label_kind"] = LabelKindName(query.label_kind);

  ojson j;
  j["query"] = q;
  j["candidates"] = result.candidates;
  j["survivors"] = result.survivors;
  j["binding_constraint"] = result.binding_constraint.empty()
                                ? ojson(nullptr)
                                : ojson(result.binding_constraint);
  j["recommendations"] = ojson::array();
  for (const auto& r : result.items) {
    j["recommendations"].push_back(RecommendationJson(r));
  }
  return j;
}

}  // namespace ubench::json_views
