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

#include "ubench/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ubench/error.h"
#include "ubench/special_functions.h"

namespace ubench {

TTestResult PairedTTest(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error("paired t-test: length mismatch " + std::to_string(x.size()) +
                " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) throw Error("paired t-test needs at least 2 pairs");
  const std::size_t n = x.size();
  std::vector<double> d(n);
  double sum = 0;
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = x[i] - y[i];
    sum += d[i];
    all_zero = all_zero && d[i] == 0;
  }
  TTestResult r;
  r.n = static_cast<int>(n);
  r.df = r.n - 1;
  if (all_zero) return r;  // t = 0, p = 1

  const double mean = sum / n;
  double ss = 0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  r.mean_diff = mean;
  // Rounding noise in x - y can leave a tiny sd for a constant shift.
  if (sd <= 1e-12 * std::fabs(mean)) {
    r.degenerate = true;
    r.t_stat = std::copysign(std::numeric_limits<double>::infinity(), mean);
    r.p_two_sided = 0.0;
    return r;
  }
  r.t_stat = mean * std::sqrt(static_cast<double>(n)) / sd;
  r.p_two_sided = StudentTTwoSided(r.t_stat, r.df);
  return r;
}

std::string TierName(Tier tier) {
  switch (tier) {
    case Tier::kP0001: return "p<0.0001";
    case Tier::kP001: return "p<0.001";
    case Tier::kP01: return "p<0.01";
    case Tier::kP05: return "p<0.05";
    case Tier::kNotSignificant: return "not_significant";
    case Tier::kUnavailable: return "unavailable";
  }
  return "";
}

std::string DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kImproves: return "improves";
    case Direction::kDegrades: return "degrades";
    case Direction::kTie: return "tie";
  }
  return "";
}

Direction CompareMeans(double variant_mean, double baseline_mean) {
  if (variant_mean > baseline_mean) return Direction::kImproves;
  if (variant_mean < baseline_mean) return Direction::kDegrades;
  return Direction::kTie;
}

SignificanceTier Classify(double p, double variant_mean, double baseline_mean,
                          const TierLegend& legend) {
  if (!(p >= 0 && p <= 1)) throw Error("p-value outside [0,1]");
  SignificanceTier out;
  out.direction = CompareMeans(variant_mean, baseline_mean);
  static constexpr Tier kOrder[4] = {Tier::kP0001, Tier::kP001, Tier::kP01,
                                     Tier::kP05};
  out.tier = Tier::kNotSignificant;
  for (int i = 0; i < 4; ++i) {
    if (p < legend.thresholds[i]) {
      out.tier = kOrder[i];
      break;
    }
  }
  return out;
}

std::vector<SignificanceCell> SignificanceMatrix(const Registry& registry,
                                                 const std::string& baseline,
                                                 Scope scope,
                                                 const TierLegend& legend) {
  if (registry.FindModel(baseline) == nullptr) {
    throw Error("unknown baseline model '" + baseline + "'");
  }
  std::map<std::string, const EvaluationRecord*> base;
  for (const auto* r : registry.RecordsIn(scope)) {
    if (r->model == baseline) base[r->DatasetKey()] = r;
  }
  std::vector<SignificanceCell> cells;
  for (const auto* r : registry.RecordsIn(scope)) {
    if (r->model == baseline) continue;
    auto it = base.find(r->DatasetKey());
    if (it == base.end()) continue;
    const EvaluationRecord* b = it->second;
    SignificanceCell c;
    c.model = r->model;
    c.dataset = r->DatasetKey();
    c.scope = scope;
    c.variant_mean = r->mean_iou;
    c.baseline_mean = b->mean_iou;
    bool paired = r->HasSamples() && b->HasSamples() &&
                  r->sample_ious.size() == b->sample_ious.size() &&
                  r->sample_ious.size() >= 2;
    if (paired) {
      c.test = PairedTTest(r->sample_ious, b->sample_ious);
      c.tier = Classify(c.test->p_two_sided, c.variant_mean, c.baseline_mean,
                        legend);
    } else {
      c.tier.tier = Tier::kUnavailable;
      c.tier.direction = CompareMeans(c.variant_mean, c.baseline_mean);
    }
    cells.push_back(std::move(c));
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return a.model != b.model ? a.model < b.model : a.dataset < b.dataset;
  });
  return cells;
}

}  // namespace ubench
