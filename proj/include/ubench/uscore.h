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

#ifndef UBENCH_USCORE_H_
#define UBENCH_USCORE_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ubench/registry.h"

namespace ubench {

enum class BandMetric { kIou, kParams, kFlops, kFps };

std::string BandMetricName(BandMetric metric);
std::optional<BandMetric> ParseBandMetric(std::string_view text);

inline constexpr char kGlobalBandKey[] = "global";

struct QuantileBand {
  BandMetric metric = BandMetric::kIou;
  std::string scope_key;  // dataset key, or "global"
  double q10 = 0;
  double q90 = 0;

  bool operator==(const QuantileBand&) const = default;
};

class BandSet {
 public:
  // Replaces any band with the same metric and key.
  void Add(const QuantileBand& band);
  const QuantileBand* Find(BandMetric metric, std::string_view key) const;
  // Throws naming the missing band.
  const QuantileBand& Require(BandMetric metric, std::string_view key) const;
  std::vector<QuantileBand> All() const;  // sorted by metric, then key
  bool empty() const { return bands_.empty(); }

 private:
  std::map<std::pair<BandMetric, std::string>, QuantileBand, std::less<>>
      bands_;
};

// Linear interpolation at position (n-1)q of the sorted values.
double Quantile(std::vector<double> values, double q);

// Accuracy bands per dataset key of `scope`; efficiency bands over every
// registered model card.
BandSet ComputeBands(const Registry& registry, Scope scope);

// bands.csv: metric,scope_key,q10,q90
BandSet ParseBandsCsv(std::string_view text,
                      std::string_view context = "bands.csv");
std::string BandsCsv(const BandSet& bands);

struct RawMetrics {
  double accuracy = 0;  // mean IoU in [0,1]
  double params = 0;
  double flops = 0;
  double fps = 0;
};

struct Components {
  double a = 0;
  double p = 0;
  double g = 0;
  double s = 0;
};

struct UScoreConfig {
  std::array<double, 3> weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};  // p, g, s
  double alpha = 0.5;  // accuracy weight
  // Lower bound applied to every component. 0 disables it.
  double floor = 0;
};

// Benefit metric: clip((v - q10) / (q90 - q10)). A flat band gives 1 at or
// above it and 0 below.
double NormalizeBenefit(double value, const QuantileBand& band);
// Cost metric on a log scale: clip((log q90 - log v) / (log q90 - log q10)).
// A flat band gives 1 at or below it and 0 above.
double NormalizeLogCost(double value, const QuantileBand& band);

Components NormalizeComponents(const RawMetrics& raw,
                               const QuantileBand& accuracy,
                               const QuantileBand& params,
                               const QuantileBand& flops,
                               const QuantileBand& fps);

// sum(w) / sum(w / x). Any x = 0 with w > 0 gives 0.
double HarmonicMean(const std::vector<double>& values,
                    const std::vector<double>& weights);

// 1 / (alpha / a + (1 - alpha) / eff).
double UScore(double a, double eff, double alpha = 0.5);

struct UScoreBreakdown {
  std::string model;
  std::string dataset;  // dataset key
  Scope scope = Scope::kInDomain;
  RawMetrics raw;
  double a = 0;
  double p = 0;
  double g = 0;
  double s = 0;
  double eff = 0;
  double u = 0;
  std::array<double, 3> weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  double alpha = 0.5;
};

UScoreBreakdown ComputeBreakdown(const RawMetrics& raw,
                                 const QuantileBand& accuracy,
                                 const BandSet& efficiency,
                                 const UScoreConfig& config = {});

// One breakdown per record in `scope`, sorted by model then dataset key.
std::vector<UScoreBreakdown> ScoreRegistry(const Registry& registry,
                                           Scope scope, const BandSet& bands,
                                           const UScoreConfig& config = {});

// Component-wise mean over a model's datasets.
UScoreBreakdown MacroAverage(const std::vector<UScoreBreakdown>& rows);

}  // namespace ubench

#endif  // UBENCH_USCORE_H_
