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

#ifndef UBENCH_LEADERBOARD_H_
#define UBENCH_LEADERBOARD_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ubench/registry.h"
#include "ubench/stats.h"
#include "ubench/uscore.h"

namespace ubench {

enum class LeaderboardMetric { kIou, kUScore };
std::string LeaderboardMetricName(LeaderboardMetric metric);
std::optional<LeaderboardMetric> ParseLeaderboardMetric(std::string_view text);

// model -> dataset key -> value in [0,1].
using MetricTable = std::map<std::string, std::map<std::string, double>>;

MetricTable IouTable(const Registry& registry, Scope scope);
MetricTable UScoreTable(const std::vector<UScoreBreakdown>& rows);

// Externally computed values: model,dataset,scope,value. Rows of other
// scopes are skipped. Names must be registered.
MetricTable ParseMetricValuesCsv(std::string_view text, Scope scope,
                                 const Registry& registry,
                                 std::string_view context = "values.csv");

struct LeaderboardEntry {
  int rank = 0;
  std::string model;
  double value = 0;                         // macro average
  std::map<std::string, double> per_dataset;
  // Paired t-test of per-dataset values against the baseline; unavailable
  // with fewer than two shared datasets. Absent for the baseline itself.
  std::optional<SignificanceTier> tier;
  std::map<std::string, SignificanceTier> per_dataset_tier;
};

struct LeaderboardOptions {
  // Empty disables tiers.
  std::string baseline;
  TierLegend legend;
  // Per-dataset tiers to join, e.g. from SignificanceMatrix.
  const std::vector<SignificanceCell>* cells = nullptr;
};

// Ordered by macro average descending, then name ascending.
std::vector<LeaderboardEntry> BuildLeaderboard(
    const MetricTable& table, const LeaderboardOptions& options = {});

struct FamilyAggregate {
  Family family = Family::kCnn;
  int members = 0;
  double value = 0;
  std::map<std::string, double> per_dataset;
};

// Per dataset, the unweighted mean over family members; then the macro
// average over datasets. Families without members are omitted.
std::vector<FamilyAggregate> AggregateByFamily(const MetricTable& table,
                                               const Registry& registry);

struct YearBest {
  int year = 0;
  std::string model;
  double value = 0;
};

// Best macro average per publication year (year 0 means unknown and is
// skipped). Ties go to the lexicographically smaller name.
std::vector<YearBest> BestPerYear(const MetricTable& table,
                                  const Registry& registry);

}  // namespace ubench

#endif  // UBENCH_LEADERBOARD_H_
