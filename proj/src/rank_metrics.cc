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

#include "ubench/rank_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ubench/error.h"

namespace ubench {

double DcgAtK(const std::vector<double>& relevance, int k) {
  if (k < 1) throw Error("k must be >= 1");
  double dcg = 0;
  int n = std::min<int>(k, static_cast<int>(relevance.size()));
  for (int i = 0; i < n; ++i) {
    dcg += relevance[i] / std::log2(i + 2.0);
  }
  return dcg;
}

double NdcgAtK(const std::vector<double>& presented, int k) {
  for (double r : presented) {
    if (r < 0) throw Error("relevance must be >= 0");
  }
  std::vector<double> ideal = presented;
  std::sort(ideal.begin(), ideal.end(), std::greater<double>());
  double idcg = DcgAtK(ideal, k);
  if (idcg == 0) return 0.0;
  double v = DcgAtK(presented, k) / idcg;
  return std::min(v, 1.0);
}

double AveragePrecision(const std::vector<bool>& relevant) {
  double sum = 0;
  int hits = 0;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    if (!relevant[i]) continue;
    ++hits;
    sum += static_cast<double>(hits) / (i + 1);
  }
  return hits == 0 ? 0.0 : sum / hits;
}

double MeanAveragePrecision(const std::vector<std::vector<bool>>& queries) {
  if (queries.empty()) return 0.0;
  double sum = 0;
  for (const auto& q : queries) sum += AveragePrecision(q);
  return sum / queries.size();
}

std::vector<double> MidRanks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double mid = (i + j) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("spearman: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw Error("spearman needs at least 2 items");
  std::vector<double> rx = MidRanks(x);
  std::vector<double> ry = MidRanks(y);
  auto has_ties = [](std::vector<double> r) {
    std::sort(r.begin(), r.end());
    return std::adjacent_find(r.begin(), r.end()) != r.end();
  };
  if (!has_ties(rx) && !has_ties(ry)) {
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    double nn = static_cast<double>(n);
    return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
  }
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  double rho = sxy / std::sqrt(sxx * syy);
  return std::max(-1.0, std::min(1.0, rho));
}

}  // namespace ubench
