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

#include "ubench/advisor.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "ubench/error.h"
#include "ubench/rank_metrics.h"

namespace ubench {

std::string LabelKindName(LabelKind kind) {
  return kind == LabelKind::kIou ? "iou" : "uscore";
}

std::optional<LabelKind> ParseLabelKind(std::string_view text) {
  if (text == "iou") return LabelKind::kIou;
  if (text == "uscore") return LabelKind::kUScore;
  return std::nullopt;
}

DatasetTraits TraitsFor(const Registry& registry,
                        const std::map<std::string, DatasetTraits>& traits,
                        const std::string& dataset) {
  auto it = traits.find(dataset);
  if (it != traits.end()) return it->second;
  const DatasetCard* card = registry.FindDataset(dataset);
  if (card == nullptr) throw Error("unknown dataset '" + dataset + "'");
  DatasetTraits t;
  t.modality = card->modality;
  return t;
}

std::vector<RankingGroup> BuildRankingGroups(
    const Registry& registry,
    const std::map<std::string, DatasetTraits>& traits,
    const MetricTable& values, const std::vector<std::string>& datasets) {
  std::vector<RankingGroup> groups;
  for (const auto& name : datasets) {
    const DatasetCard* card = registry.FindDataset(name);
    if (card == nullptr) throw Error("unknown dataset '" + name + "'");
    if (card->role != Role::kSource) {
      throw Error("target dataset '" + name + "' cannot be a ranking group");
    }
    DatasetTraits t = TraitsFor(registry, traits, name);
    std::map<std::string, double> raw;
    for (const auto& [model, per] : values) {
      auto it = per.find(name);
      if (it != per.end()) raw[model] = it->second;
    }
    RankingGroup g;
    g.dataset = name;
    for (const auto& [model, rel] : RelevanceLabels(raw)) {
      const ModelCard* m = registry.FindModel(model);
      if (m == nullptr) throw Error("unknown model '" + model + "'");
      g.items.push_back({model, BuildFeatures(t, *m), rel});
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

GroupSplit SplitGroups(const Registry& registry, const MetricTable& values,
                       const std::vector<std::string>& held_out) {
  std::set<std::string> available;
  for (const auto& [model, per] : values) {
    for (const auto& [dataset, v] : per) {
      const DatasetCard* card = registry.FindDataset(dataset);
      if (card != nullptr && card->role == Role::kSource) {
        available.insert(dataset);
      }
    }
  }
  std::set<std::string> hold(held_out.begin(), held_out.end());
  for (const auto& h : hold) {
    if (!available.count(h)) {
      throw Error("held-out dataset '" + h + "' has no in-domain values");
    }
  }
  GroupSplit split;
  for (const auto& d : available) {
    (hold.count(d) ? split.held_out : split.train).push_back(d);
  }
  return split;
}

RankEval EvaluateRanker(const RankerModel& model,
                        const std::vector<RankingGroup>& held_out,
                        const std::vector<std::string>& training_datasets,
                        const EvalOptions& options) {
  std::set<std::string> train(training_datasets.begin(),
                              training_datasets.end());
  for (const auto& g : held_out) {
    if (train.count(g.dataset)) {
      throw Error("evaluation group '" + g.dataset +
                  "' overlaps the training groups");
    }
  }
  RankEval eval;
  for (int k : options.ks) eval.ndcg[k] = 0;
  int counted = 0;
  for (const auto& g : held_out) {
    const std::size_t n = g.items.size();
    if (n < 2) continue;
    std::vector<double> scores(n), rel(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = model.Score(g.items[i].features);
      rel[i] = g.items[i].relevance;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return g.items[a].model < g.items[b].model;
    });
    std::vector<double> presented;
    std::vector<bool> relevant;
    for (std::size_t i : order) {
      presented.push_back(rel[i]);
      relevant.push_back(rel[i] >= options.relevant_at);
    }
    GroupEval ge;
    ge.dataset = g.dataset;
    for (int k : options.ks) {
      ge.ndcg[k] = NdcgAtK(presented, k);
      eval.ndcg[k] += ge.ndcg[k];
    }
    ge.average_precision = AveragePrecision(relevant);
    ge.spearman = Spearman(scores, rel);
    eval.map += ge.average_precision;
    eval.spearman += ge.spearman;
    eval.groups.push_back(std::move(ge));
    ++counted;
  }
  if (counted == 0) throw Error("no evaluation group has 2 or more items");
  for (auto& [k, v] : eval.ndcg) v /= counted;
  eval.map /= counted;
  eval.spearman /= counted;
  return eval;
}

bool SatisfiesConstraints(const ModelBins& bins, const AdviceQuery& query) {
  if (query.storage && bins.storage > *query.storage) return false;
  if (query.compute && bins.compute > *query.compute) return false;
  if (query.speed && bins.speed < *query.speed) return false;
  return true;
}

AdviceResult Advise(const Registry& registry, const RankerModel& ranker,
                    const AdviceQuery& query,
                    const std::map<std::string, UScoreBreakdown>& uscores) {
  if (ranker.schema != FeatureSchema()) {
    throw Error("ranker feature schema does not match this build");
  }
  DiscretizeDataset(query.traits);  // validates the modality

  AdviceResult result;
  result.candidates = static_cast<int>(registry.models.size());
  std::vector<Recommendation> kept;
  for (const auto& m : registry.models) {
    Recommendation r;
    r.model = m.name;
    r.family = m.family;
    r.bins = DiscretizeModel(m.params, m.flops, m.fps);
    if (!SatisfiesConstraints(r.bins, query)) continue;
    r.params = m.params;
    r.flops = m.flops;
    r.fps = m.fps;
    r.score = ranker.Score(BuildFeatures(query.traits, m));
    auto it = uscores.find(m.name);
    if (it != uscores.end()) r.uscore = it->second;
    kept.push_back(std::move(r));
  }
  result.survivors = static_cast<int>(kept.size());

  if (kept.empty() && result.candidates > 0) {
    std::vector<std::string> alone;
    std::vector<std::string> active;
    auto check = [&](const char* name, AdviceQuery only) {
      active.push_back(name);
      for (const auto& m : registry.models) {
        if (SatisfiesConstraints(DiscretizeModel(m.params, m.flops, m.fps),
                                 only)) {
          return;
        }
      }
      alone.push_back(name);
    };
    if (query.storage) {
      AdviceQuery q;
      q.storage = query.storage;
      check("storage", q);
    }
    if (query.compute) {
      AdviceQuery q;
      q.compute = query.compute;
      check("compute", q);
    }
    if (query.speed) {
      AdviceQuery q;
      q.speed = query.speed;
      check("speed", q);
    }
    const auto& names = alone.empty() ? active : alone;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i > 0) result.binding_constraint += "+";
      result.binding_constraint += names[i];
    }
    return result;
  }

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    double ua = a.uscore ? a.uscore->u : -1.0;
    double ub = b.uscore ? b.uscore->u : -1.0;
    if (ua != ub) return ua > ub;
    return a.model < b.model;
  });
  if (query.k > 0 && static_cast<int>(kept.size()) > query.k) {
    kept.resize(query.k);
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    kept[i].rank = static_cast<int>(i + 1);
  }
  result.items = std::move(kept);
  return result;
}

std::map<std::string, UScoreBreakdown> ModelUScores(
    const std::vector<UScoreBreakdown>& rows) {
  std::map<std::string, std::vector<UScoreBreakdown>> by_model;
  for (const auto& r : rows) by_model[r.model].push_back(r);
  std::map<std::string, UScoreBreakdown> out;
  for (const auto& [model, rs] : by_model) out[model] = MacroAverage(rs);
  return out;
}

}  // namespace ubench
