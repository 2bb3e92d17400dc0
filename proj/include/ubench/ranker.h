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

#ifndef UBENCH_RANKER_H_
#define UBENCH_RANKER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ubench {

struct RankItem {
  std::string model;
  std::vector<double> features;
  double relevance = 0;  // [0,1] within the group
};

// Items of one dataset. Pairs are only formed inside a group.
struct RankingGroup {
  std::string dataset;
  std::vector<RankItem> items;
};

// Min-max scaling to [0,1]; a flat group maps every model to 0.5.
std::map<std::string, double> RelevanceLabels(
    const std::map<std::string, double>& values);

// Leaf when feature < 0. Samples with x[feature] <= threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0;
  int left = -1;
  int right = -1;
  double value = 0;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // root at 0
  double Predict(const std::vector<double>& x) const;
  int Depth() const;
};

struct RankerConfig {
  int rounds = 200;
  int max_depth = 4;
  double learning_rate = 0.1;
  int min_leaf = 2;
  double l2 = 1.0;  // leaf weight is -G / (H + l2)
  std::uint64_t seed = 0;
};

struct RankerModel {
  std::vector<std::string> schema;
  std::vector<RegressionTree> trees;  // leaf values already scaled
  RankerConfig config;
  std::string label_kind;
  // Dataset groups the trees were fit on.
  std::vector<std::string> train_groups;
  // Training loss before any tree, then after each kept tree.
  std::vector<double> loss_history;

  double Score(const std::vector<double>& x) const;
  std::vector<double> Predict(const std::vector<std::vector<double>>& xs) const;
};

// Sum of log(1 + exp(-(s_i - s_j))) over pairs with rel_i > rel_j.
double PairwiseLoss(const std::vector<RankingGroup>& groups,
                    const std::vector<std::vector<double>>& scores);

// Newton-boosted regression trees on the pairwise logistic loss. Groups and
// items are sorted by name first, so input order does not matter. A round
// whose tree would raise the loss is shrunk; training stops when shrinking
// does not help.
RankerModel TrainRanker(std::vector<RankingGroup> groups,
                        const std::vector<std::string>& schema,
                        const RankerConfig& config = {},
                        std::string label_kind = "");

inline constexpr char kRankerFormat[] = "ubench-ranker/1";

std::string RankerToJson(const RankerModel& model);
RankerModel RankerFromJson(std::string_view text);

}  // namespace ubench

#endif  // UBENCH_RANKER_H_
