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

#ifndef UBENCH_REPORT_H_
#define UBENCH_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ubench/advisor.h"
#include "ubench/foreground.h"
#include "ubench/leaderboard.h"
#include "ubench/stats.h"
#include "ubench/uscore.h"

namespace ubench {

enum class ReportFormat { kCsv, kJson, kMarkdown };
std::optional<ReportFormat> ParseReportFormat(std::string_view text);

// Stars for the tier (four for p<0.0001) plus an arrow for the direction;
// "ns" when not significant; empty when unavailable.
std::string TierGlyph(const SignificanceTier& tier);
std::string LegendText(const TierLegend& legend, const std::string& baseline);

struct LeaderboardReport {
  LeaderboardMetric metric = LeaderboardMetric::kIou;
  Scope scope = Scope::kInDomain;
  std::string baseline;
  TierLegend legend;
  std::vector<LeaderboardEntry> entries;
};

// CSV and JSON keep full precision; Markdown shows two decimals with tier
// glyphs and a legend line.
std::string EmitLeaderboard(const LeaderboardReport& report,
                            ReportFormat format);

// CSV columns: model,dataset,scope,t,df,p,tier,direction.
std::string EmitSignificance(const std::vector<SignificanceCell>& cells,
                             ReportFormat format);

std::string EmitScores(const std::vector<UScoreBreakdown>& rows,
                       ReportFormat format);

std::string EmitFamilies(const std::vector<FamilyAggregate>& rows,
                         ReportFormat format);
std::string EmitYearBest(const std::vector<YearBest>& rows,
                         ReportFormat format);

// JSON documents.
std::string EmitProfile(const std::string& dataset,
                        const std::vector<std::string>& sample_names,
                        const DatasetForegroundProfile& profile);
std::string EmitRankEval(const RankEval& eval, const std::string& label_kind,
                         const GroupSplit& split);
std::string EmitAdvice(const AdviceResult& result, const AdviceQuery& query);

}  // namespace ubench

#endif  // UBENCH_REPORT_H_
