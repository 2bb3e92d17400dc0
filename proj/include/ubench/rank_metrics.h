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

#ifndef UBENCH_RANK_METRICS_H_
#define UBENCH_RANK_METRICS_H_

#include <map>
#include <vector>

namespace ubench {

// Linear gain: sum over the first k positions of rel_i / log2(i + 1).
double DcgAtK(const std::vector<double>& relevance, int k);

// DCG of the presented order over DCG of the same values sorted
// descending. 0 when the ideal DCG is 0.
double NdcgAtK(const std::vector<double>& presented, int k);

// `relevant` flags in ranked order. Mean precision at each relevant rank;
// 0 when nothing is relevant.
double AveragePrecision(const std::vector<bool>& relevant);
double MeanAveragePrecision(const std::vector<std::vector<bool>>& queries);

// 1-based ranks, ties share the mean of their positions. Rank 1 is the
// smallest value.
std::vector<double> MidRanks(const std::vector<double>& values);

// Rank correlation of two score vectors. Without ties this is
// 1 - 6 sum d^2 / (n (n^2 - 1)); with ties it is the Pearson correlation of
// the mid-ranks, and 0 if either side is constant.
double Spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ubench

#endif  // UBENCH_RANK_METRICS_H_
