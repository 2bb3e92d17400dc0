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

#include "ubench/leaderboard.h"

#include <algorithm>
#include <set>

#include "ubench/csv.h"
#include "ubench/error.h"

namespace ubench {
namespace {

double MacroMean(const std::map<std::string, double>& values) {
  double sum = 0;
  for (const auto& [k, v] : values) sum += v;
  return values.empty() ? 0.0 : sum / values.size();
}

}  // namespace

std::string LeaderboardMetricName(LeaderboardMetric metric) {
  return metric == LeaderboardMetric::kIou ? "iou" : "uscore";
}

std::optional<LeaderboardMetric> ParseLeaderboardMetric(std::string_view text) {
  if (text == "iou") return LeaderboardMetric::kIou;
  if (text == "uscore") return LeaderboardMetric::kUScore;
  return std::nullopt;
}

MetricTable IouTable(const Registry& registry, Scope scope) {
  MetricTable t;
  for (const auto* r : registry.RecordsIn(scope)) {
    t[r->model][r->DatasetKey()] = r->mean_iou;
  }
  return t;
}

MetricTable UScoreTable(const std::vector<UScoreBreakdown>& rows) {
  MetricTable t;
  for (const auto& r : rows) t[r.model][r.dataset] = r.u;
  return t;
}

MetricTable ParseMetricValuesCsv(std::string_view text, Scope scope,
                                 const Registry& registry,
                                 std::string_view context) {
  CsvTable t = ParseCsv(text, context);
  std::size_t c_model = t.Column("model", context);
  std::size_t c_dataset = t.Column("dataset", context);
  std::size_t c_scope = t.Column("scope", context);
  std::size_t c_value = t.Column("value", context);
  MetricTable out;
  for (const auto& row : t.rows) {
    std::string where = std::string(context) + ":" + std::to_string(row.line);
    auto s = ParseScope(row.cells[c_scope]);
    if (!s) throw Error(where + ": bad scope '" + row.cells[c_scope] + "'");
    if (*s != scope) continue;
    const std::string& model = row.cells[c_model];
    if (registry.FindModel(model) == nullptr) {
      throw Error(where + ": unknown model '" + model + "'");
    }
    double v = ParseDouble(row.cells[c_value], where + ": value");
    auto [it, fresh] = out[model].emplace(row.cells[c_dataset], v);
    if (!fresh) throw Error(where + ": duplicate value");
  }
  return out;
}

std::vector<LeaderboardEntry> BuildLeaderboard(
    const MetricTable& table, const LeaderboardOptions& options) {
  struct Row {
    std::string model;
    double mean;
  };
  std::vector<Row> rows;
  for (const auto& [model, values] : table) {
    if (!values.empty()) rows.push_back({model, MacroMean(values)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.mean != b.mean ? a.mean > b.mean : a.model < b.model;
  });

  const std::map<std::string, double>* base = nullptr;
  if (!options.baseline.empty()) {
    auto it = table.find(options.baseline);
    if (it != table.end()) base = &it->second;
  }

  std::vector<LeaderboardEntry> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    LeaderboardEntry e;
    e.rank = static_cast<int>(i + 1);
    e.model = rows[i].model;
    e.value = rows[i].mean;
    const auto& values = table.at(e.model);
    for (const auto& [k, v] : values) e.per_dataset[k] = v;

    if (base != nullptr && e.model != options.baseline) {
      std::vector<double> x, y;
      for (const auto& [k, v] : values) {
        auto b = base->find(k);
        if (b == base->end()) continue;
        x.push_back(v);
        y.push_back(b->second);
      }
      if (x.size() >= 2) {
        TTestResult t = PairedTTest(x, y);
        e.tier = Classify(t.p_two_sided, MacroMean(values), MacroMean(*base),
                          options.legend);
      } else {
        e.tier = SignificanceTier{
            Tier::kUnavailable, CompareMeans(MacroMean(values), MacroMean(*base))};
      }
    }
    if (options.cells != nullptr) {
      for (const auto& c : *options.cells) {
        if (c.model == e.model && values.count(c.dataset)) {
          e.per_dataset_tier[c.dataset] = c.tier;
        }
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<FamilyAggregate> AggregateByFamily(const MetricTable& table,
                                               const Registry& registry) {
  std::map<Family, std::map<std::string, std::vector<double>>> grouped;
  std::map<Family, int> members;
  for (const auto& [model, values] : table) {
    const ModelCard* card = registry.FindModel(model);
    if (card == nullptr) throw Error("unknown model '" + model + "'");
    members[card->family]++;
    for (const auto& [k, v] : values) grouped[card->family][k].push_back(v);
  }
  std::vector<FamilyAggregate> out;
  for (Family f : AllFamilies()) {
    auto it = grouped.find(f);
    if (it == grouped.end()) continue;
    FamilyAggregate agg;
    agg.family = f;
    agg.members = members[f];
    std::map<std::string, double> means;
    for (const auto& [k, vs] : it->second) {
      double sum = 0;
      for (double v : vs) sum += v;
      means[k] = sum / vs.size();
      agg.per_dataset[k] = means[k];
    }
    agg.value = MacroMean(means);
    out.push_back(std::move(agg));
  }
  return out;
}

std::vector<YearBest> BestPerYear(const MetricTable& table,
                                  const Registry& registry) {
  std::map<int, YearBest> best;
  for (const auto& [model, values] : table) {
    const ModelCard* card = registry.FindModel(model);
    if (card == nullptr) throw Error("unknown model '" + model + "'");
    if (card->year == 0 || values.empty()) continue;
    double v = MacroMean(values);
    auto it = best.find(card->year);
    // `table` iterates by name, so strict > keeps the smaller name on ties.
    if (it == best.end() || v > it->second.value) {
      best[card->year] = {card->year, model, v};
    }
  }
  std::vector<YearBest> out;
  for (const auto& [y, b] : best) out.push_back(b);
  return out;
}

}  // namespace ubench
