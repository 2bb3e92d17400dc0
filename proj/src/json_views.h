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

#ifndef UBENCH_SRC_JSON_VIEWS_H_
#define UBENCH_SRC_JSON_VIEWS_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "ubench/advisor.h"
#include "ubench/foreground.h"
#include "ubench/leaderboard.h"
#include "ubench/registry.h"
#include "ubench/stats.h"
#include "ubench/uscore.h"

namespace ubench::json_views {

using ojson = nlohmann::ordered_json;

ojson ModelCardJson(const ModelCard& card);
ojson DatasetCardJson(const DatasetCard& card);
ojson BinsJson(const ModelBins& bins);
ojson BreakdownJson(const UScoreBreakdown& b);
ojson TierJson(const SignificanceTier& tier);
ojson TTestJson(const TTestResult& t);
ojson SignificanceCellJson(const SignificanceCell& cell);
ojson LeaderboardEntryJson(const LeaderboardEntry& e);
ojson LegendJson(const TierLegend& legend);
ojson TraitsJson(const DatasetTraits& t);
ojson RecommendationJson(const Recommendation& r);
ojson AdviceJson(const AdviceResult& result, const AdviceQuery& query);

// JSON has no infinity; infinite t statistics become strings.
ojson Number(double v);

}  // namespace ubench::json_views

#endif  // UBENCH_SRC_JSON_VIEWS_H_
