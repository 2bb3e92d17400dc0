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

#ifndef UBENCH_WORKSPACE_H_
#define UBENCH_WORKSPACE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ubench/advisor.h"
#include "ubench/features.h"
#include "ubench/leaderboard.h"
#include "ubench/registry.h"
#include "ubench/stats.h"
#include "ubench/uscore.h"

namespace ubench {

inline constexpr char kDefaultBaseline[] = "U-Net";

struct WorkspaceOptions {
  std::filesystem::path registry_dir;
  // Quantile bands to use instead of recomputing them from the zoo.
  std::optional<std::filesystem::path> bands_path;
  // Per-(model, dataset) U-Score values that replace computed ones in
  // leaderboards and advisor labels.
  std::optional<std::filesystem::path> uscore_values_path;
  UScoreConfig uscore;
};

// A loaded registry directory with everything derived from it. Immutable
// after Load, so one instance can serve concurrent readers.
class Workspace {
 public:
  static Workspace Load(const WorkspaceOptions& options);
  explicit Workspace(Snapshot snapshot);

  const Snapshot& snapshot() const { return snapshot_; }
  const Registry& registry() const { return snapshot_.registry(); }
  const std::map<std::string, DatasetTraits>& traits() const { return traits_; }

  BandSet Bands(Scope scope) const;
  std::vector<UScoreBreakdown> Scores(Scope scope) const;
  MetricTable Table(LeaderboardMetric metric, Scope scope) const;
  MetricTable Labels(LabelKind kind) const;

  std::vector<LeaderboardEntry> Leaderboard(LeaderboardMetric metric,
                                            Scope scope,
                                            const std::string& baseline) const;
  std::vector<SignificanceCell> Significance(const std::string& baseline,
                                             Scope scope) const;
  // Mean in-domain breakdown per model.
  std::map<std::string, UScoreBreakdown> ModelSummaries() const;

 private:
  Snapshot snapshot_;
  std::map<std::string, DatasetTraits> traits_;
  std::optional<BandSet> band_override_;
  std::optional<std::string> uscore_values_csv_;
  UScoreConfig config_;
};

}  // namespace ubench

#endif  // UBENCH_WORKSPACE_H_
