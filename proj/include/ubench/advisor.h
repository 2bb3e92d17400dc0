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

#ifndef UBENCH_ADVISOR_H_
#define UBENCH_ADVISOR_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ubench/features.h"
#include "ubench/leaderboard.h"
#include "ubench/ranker.h"
#include "ubench/registry.h"
#include "ubench/uscore.h"

namespace ubench {

enum class LabelKind { kIou, kUScore };
std::string LabelKindName(LabelKind kind);
std::optional<LabelKind> ParseLabelKind(std::string_view text);

// Traits for `dataset`: the given entry, or the card's modality with the
// large/regular/clear defaults when none was recorded.
DatasetTraits TraitsFor(const Registry& registry,
                        const std::map<std::string, DatasetTraits>& traits,
                        const std::string& dataset);

// One group per listed dataset, built from in-domain values. Every dataset
// must be a source dataset.
std::vector<RankingGroup> BuildRankingGroups(
    const Registry& registry,
    const std::map<std::string, DatasetTraits>& traits,
    const MetricTable& values, const std::vector<std::string>& datasets);

struct GroupSplit {
  std::vector<std::string> train;
  std::vector<std::string> held_out;
};

// Source datasets with values, minus `held_out` (which must be among them).
GroupSplit SplitGroups(const Registry& registry, const MetricTable& values,
                       const std::vector<std::string>& held_out);

struct GroupEval {
  std::string dataset;
  std::map<int, double> ndcg;
  double average_precision = 0;
  double spearman = 0;
};

struct RankEval {
  std::map<int, double> ndcg;  // k -> mean over groups
  double map = 0;
  double spearman = 0;
  std::vector<GroupEval> groups;
};

struct EvalOptions {
  std::vector<int> ks = {5, 20};
  double relevant_at = 0.75;  // binary relevance for MAP
};

// Predicted order is score descending, then model name. Throws if a held-out
// group shares a dataset with `training_datasets`.
RankEval EvaluateRanker(const RankerModel& model,
                        const std::vector<RankingGroup>& held_out,
                        const std::vector<std::string>& training_datasets,
                        const EvalOptions& options = {});

struct AdviceQuery {
  DatasetTraits traits;
  // Caps: keep models at or below this bin.
  std::optional<StorageBin> storage;
  std::optional<ComputeBin> compute;
  // Floor: keep models at or above this bin.
  std::optional<SpeedBin> speed;
  int k = 10;  // <= 0 means all
  LabelKind label_kind = LabelKind::kUScore;
};

struct Recommendation {
  int rank = 0;
  std::string model;
  Family family = Family::kCnn;
  double score = 0;
  ModelBins bins;
  double params = 0;
  double flops = 0;
  double fps = 0;
  // Mean in-domain U-Score components, when the model has records.
  std::optional<UScoreBreakdown> uscore;
};

struct AdviceResult {
  std::vector<Recommendation> items;
  int candidates = 0;
  int survivors = 0;
  // Set when no model survives: the constraint(s) that emptied the list.
  std::string binding_constraint;
};

bool SatisfiesConstraints(const ModelBins& bins, const AdviceQuery& query);

// Ranks every registered model for the query traits. Ties in predicted score
// fall back to mean U-Score, then name.
AdviceResult Advise(const Registry& registry, const RankerModel& ranker,
                    const AdviceQuery& query,
                    const std::map<std::string, UScoreBreakdown>& uscores);

// Per-model macro average of in-domain breakdowns.
std::map<std::string, UScoreBreakdown> ModelUScores(
    const std::vector<UScoreBreakdown>& rows);

}  // namespace ubench

#endif  // UBENCH_ADVISOR_H_
