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

#ifndef UBENCH_STATS_H_
#define UBENCH_STATS_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ubench/registry.h"

namespace ubench {

struct TTestResult {
  double t_stat = 0;
  int df = 0;
  double p_two_sided = 1;
  int n = 0;
  double mean_diff = 0;
  // Differences are constant and nonzero: t is infinite and p is 0.
  bool degenerate = false;
};

// Two-sided paired t-test on d = x - y with the n-1 standard deviation.
TTestResult PairedTTest(const std::vector<double>& x,
                        const std::vector<double>& y);

enum class Tier { kP0001, kP001, kP01, kP05, kNotSignificant, kUnavailable };
enum class Direction { kImproves, kDegrades, kTie };

std::string TierName(Tier tier);  // "p<0.0001", ..., "not_significant"
std::string DirectionName(Direction direction);

struct TierLegend {
  // Strict upper bounds for the four significant tiers, tightest first.
  std::array<double, 4> thresholds = {1e-4, 1e-3, 1e-2, 5e-2};
};

struct SignificanceTier {
  Tier tier = Tier::kUnavailable;
  Direction direction = Direction::kTie;
  bool operator==(const SignificanceTier&) const = default;
};

Direction CompareMeans(double variant_mean, double baseline_mean);
SignificanceTier Classify(double p, double variant_mean, double baseline_mean,
                          const TierLegend& legend = {});

struct SignificanceCell {
  std::string model;
  std::string dataset;  // dataset key
  Scope scope = Scope::kInDomain;
  std::optional<TTestResult> test;  // absent when samples are missing
  SignificanceTier tier;
  double variant_mean = 0;
  double baseline_mean = 0;
};

// One cell per (variant, dataset key) where both the variant and the
// baseline have a record in `scope`. Sorted by model, then dataset.
std::vector<SignificanceCell> SignificanceMatrix(const Registry& registry,
                                                 const std::string& baseline,
                                                 Scope scope,
                                                 const TierLegend& legend = {});

}  // namespace ubench

#endif  // UBENCH_STATS_H_
