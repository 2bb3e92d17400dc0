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

#include "ubench/workspace.h"

#include "ubench/error.h"
#include "ubench/file_io.h"
#include "ubench/log.h"

namespace ubench {

Workspace::Workspace(Snapshot snapshot) : snapshot_(std::move(snapshot)) {}

Workspace Workspace::Load(const WorkspaceOptions& options) {
  Workspace ws(Snapshot(LoadRegistry(ReadRegistryDir(options.registry_dir))));
  auto traits_path = options.registry_dir / kTraitsFile;
  if (std::filesystem::exists(traits_path)) {
    ws.traits_ = ParseTraitsCsv(ReadFile(traits_path), ws.registry());
  }
  if (options.bands_path) {
    ws.band_override_ = ParseBandsCsv(ReadFile(*options.bands_path),
                                      options.bands_path->filename().string());
  }
  if (options.uscore_values_path) {
    ws.uscore_values_csv_ = ReadFile(*options.uscore_values_path);
    // Fail early on a malformed file.
    ParseMetricValuesCsv(*ws.uscore_values_csv_, Scope::kInDomain,
                         ws.registry());
  }
  ws.config_ = options.uscore;
  LogInfo("registry " + options.registry_dir.string() + " digest " +
          ws.snapshot().digest());
  return ws;
}

BandSet Workspace::Bands(Scope scope) const {
  if (band_override_) return *band_override_;
  return ComputeBands(registry(), scope);
}

std::vector<UScoreBreakdown> Workspace::Scores(Scope scope) const {
  return ScoreRegistry(registry(), scope, Bands(scope), config_);
}

MetricTable Workspace::Table(LeaderboardMetric metric, Scope scope) const {
  if (metric == LeaderboardMetric::kIou) return IouTable(registry(), scope);
  if (uscore_values_csv_) {
    return ParseMetricValuesCsv(*uscore_values_csv_, scope, registry());
  }
  return UScoreTable(Scores(scope));
}

MetricTable Workspace::Labels(LabelKind kind) const {
  return Table(kind == LabelKind::kIou ? LeaderboardMetric::kIou
                                       : LeaderboardMetric::kUScore,
               Scope::kInDomain);
}

std::vector<LeaderboardEntry> Workspace::Leaderboard(
    LeaderboardMetric metric, Scope scope, const std::string& baseline) const {
  LeaderboardOptions opts;
  std::vector<SignificanceCell> cells;
  if (!baseline.empty() && registry().FindModel(baseline) != nullptr) {
    opts.baseline = baseline;
    if (metric == LeaderboardMetric::kIou) {
      cells = Significance(baseline, scope);
      opts.cells = &cells;
    }
  } else if (!baseline.empty()) {
    LogWarn("baseline '" + baseline + "' is not registered; tiers omitted");
  }
  return BuildLeaderboard(Table(metric, scope), opts);
}

std::vector<SignificanceCell> Workspace::Significance(
    const std::string& baseline, Scope scope) const {
  return SignificanceMatrix(registry(), baseline, scope);
}

std::map<std::string, UScoreBreakdown> Workspace::ModelSummaries() const {
  return ModelUScores(Scores(Scope::kInDomain));
}

}  // namespace ubench
