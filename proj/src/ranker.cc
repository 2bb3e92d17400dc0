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

#include "ubench/ranker.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "ubench/error.h"
#include "ubench/log.h"

namespace ubench {

using ojson = nlohmann::ordered_json;

namespace {

constexpr int kMaxShrinks = 8;
constexpr double kMinGain = 1e-12;

// log(1 + exp(-m)) without overflow.
double LogisticLoss(double m) {
  return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

struct Sample {
  const std::vector<double>* x;
  double grad;
  double hess;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<Sample>& samples, int num_features,
              const RankerConfig& cfg)
      : samples_(samples), num_features_(num_features), cfg_(cfg) {}

  RegressionTree Build() {
    std::vector<int> all(samples_.size());
    std::iota(all.begin(), all.end(), 0);
    RegressionTree tree;
    Grow(&tree, all, 0);
    return tree;
  }

 private:
  int Grow(RegressionTree* tree, const std::vector<int>& idx, int depth) {
    double g = 0, h = 0;
    for (int i : idx) {
      g += samples_[i].grad;
      h += samples_[i].hess;
    }
    int node = static_cast<int>(tree->nodes.size());
    tree->nodes.push_back(TreeNode());
    tree->nodes[node].value = -g / (h + cfg_.l2) * cfg_.learning_rate;
    if (depth >= cfg_.max_depth ||
        static_cast<int>(idx.size()) < 2 * cfg_.min_leaf) {
      return node;
    }

    const double parent = g * g / (h + cfg_.l2);
    double best_gain = kMinGain;
    int best_feature = -1;
    double best_threshold = 0;
    std::vector<int> order = idx;
    for (int f = 0; f < num_features_; ++f) {
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return (*samples_[a].x)[f] < (*samples_[b].x)[f];
      });
      double gl = 0, hl = 0;
      const int n = static_cast<int>(order.size());
      for (int k = 0; k + 1 < n; ++k) {
        gl += samples_[order[k]].grad;
        hl += samples_[order[k]].hess;
        double v = (*samples_[order[k]].x)[f];
        double next = (*samples_[order[k + 1]].x)[f];
        if (v == next) continue;
        if (k + 1 < cfg_.min_leaf || n - k - 1 < cfg_.min_leaf) continue;
        double gr = g - gl, hr = h - hl;
        double gain = gl * gl / (hl + cfg_.l2) + gr * gr / (hr + cfg_.l2) -
                      parent;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          best_threshold = v + (next - v) / 2;
        }
      }
    }
    if (best_feature < 0) return node;

    std::vector<int> left, right;
    for (int i : idx) {
      ((*samples_[i].x)[best_feature] <= best_threshold ? left : right)
          .push_back(i);
    }
    int l = Grow(tree, left, depth + 1);
    int r = Grow(tree, right, depth + 1);
    TreeNode& n = tree->nodes[node];
    n.feature = best_feature;
    n.threshold = best_threshold;
    n.left = l;
    n.right = r;
    n.value = 0;
    return node;
  }

  const std::vector<Sample>& samples_;
  int num_features_;
  const RankerConfig& cfg_;
};

ojson TreeJson(const RegressionTree& tree, int node) {
  const TreeNode& n = tree.nodes[node];
  if (n.feature < 0) return ojson{{"leaf", n.value}};
  ojson j;
  j["feature"] = n.feature;
  j["threshold"] = n.threshold;
  j["left"] = TreeJson(tree, n.left);
  j["right"] = TreeJson(tree, n.right);
  return j;
}

int TreeFromJson(const ojson& j, std::size_t num_features,
                 RegressionTree* tree) {
  int node = static_cast<int>(tree->nodes.size());
  tree->nodes.push_back(TreeNode());
  if (j.contains("leaf")) {
    tree->nodes[node].value = j.at("leaf").get<double>();
    return node;
  }
  int feature = j.at("feature").get<int>();
  if (feature < 0 || static_cast<std::size_t>(feature) >= num_features) {
    throw Error("ranker: split feature " + std::to_string(feature) +
                " outside the schema");
  }
  double threshold = j.at("threshold").get<double>();
  int l = TreeFromJson(j.at("left"), num_features, tree);
  int r = TreeFromJson(j.at("right"), num_features, tree);
  TreeNode& n = tree->nodes[node];
  n.feature = feature;
  n.threshold = threshold;
  n.left = l;
  n.right = r;
  return node;
}

}  // namespace

std::map<std::string, double> RelevanceLabels(
    const std::map<std::string, double>& values) {
  std::map<std::string, double> out;
  if (values.empty()) return out;
  double lo = values.begin()->second, hi = lo;
  for (const auto& [k, v] : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (const auto& [k, v] : values) {
    out[k] = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  }
  return out;
}

double RegressionTree::Predict(const std::vector<double>& x) const {
  if (nodes.empty()) return 0.0;
  int i = 0;
  while (nodes[i].feature >= 0) {
    i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left
                                                  : nodes[i].right;
  }
  return nodes[i].value;
}

int RegressionTree::Depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  int depth = 0;
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (nodes[i].feature >= 0) {
      stack.push_back({nodes[i].left, d + 1});
      stack.push_back({nodes[i].right, d + 1});
    }
  }
  return depth;
}

double RankerModel::Score(const std::vector<double>& x) const {
  if (x.size() != schema.size()) {
    throw Error("feature vector has " + std::to_string(x.size()) +
                " slots, ranker schema has " + std::to_string(schema.size()));
  }
  double s = 0;
  for (const auto& t : trees) s += t.Predict(x);
  return s;
}

std::vector<double> RankerModel::Predict(
    const std::vector<std::vector<double>>& xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(Score(x));
  return out;
}

double PairwiseLoss(const std::vector<RankingGroup>& groups,
                    const std::vector<std::vector<double>>& scores) {
  double loss = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& items = groups[g].items;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (items[i].relevance > items[j].relevance) {
          loss += LogisticLoss(scores[g][i] - scores[g][j]);
        }
      }
    }
  }
  return loss;
}

RankerModel TrainRanker(std::vector<RankingGroup> groups,
                        const std::vector<std::string>& schema,
                        const RankerConfig& config, std::string label_kind) {
  if (config.rounds < 0 || config.max_depth < 1 || config.min_leaf < 1 ||
      !(config.learning_rate > 0) || config.l2 < 0) {
    throw Error("invalid ranker configuration");
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.dataset < b.dataset; });
  for (std::size_t i = 1; i < groups.size(); ++i) {
    if (groups[i].dataset == groups[i - 1].dataset) {
      throw Error("group " + groups[i].dataset + " repeats");
    }
  }
  std::size_t pairs = 0;
  for (auto& g : groups) {
    std::sort(g.items.begin(), g.items.end(),
              [](const auto& a, const auto& b) { return a.model < b.model; });
    for (const auto& it : g.items) {
      if (it.features.size() != schema.size()) {
        throw Error("item " + it.model + " in " + g.dataset + " has " +
                    std::to_string(it.features.size()) +
                    " features, schema has " + std::to_string(schema.size()));
      }
    }
    for (std::size_t i = 1; i < g.items.size(); ++i) {
      if (g.items[i].model == g.items[i - 1].model) {
        throw Error("model " + g.items[i].model + " repeats in " + g.dataset);
      }
    }
    for (const auto& a : g.items) {
      for (const auto& b : g.items) pairs += a.relevance > b.relevance;
    }
  }
  if (pairs == 0) throw Error("no orderable pairs in the training groups");

  RankerModel model;
  model.schema = schema;
  model.config = config;
  model.label_kind = std::move(label_kind);
  for (const auto& g : groups) model.train_groups.push_back(g.dataset);

  std::vector<std::vector<double>> scores(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    scores[g].assign(groups[g].items.size(), 0.0);
  }
  double loss = PairwiseLoss(groups, scores);
  model.loss_history.push_back(loss);

  std::vector<Sample> samples;
  for (const auto& g : groups) {
    for (const auto& it : g.items) samples.push_back({&it.features, 0, 0});
  }
  const int num_features = static_cast<int>(schema.size());

  for (int round = 0; round < config.rounds; ++round) {
    std::size_t base = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& items = groups[g].items;
      for (std::size_t i = 0; i < items.size(); ++i) {
        samples[base + i].grad = 0;
        samples[base + i].hess = 0;
      }
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = 0; j < items.size(); ++j) {
          if (!(items[i].relevance > items[j].relevance)) continue;
          double m = scores[g][i] - scores[g][j];
          double rho = 1.0 / (1.0 + std::exp(m));  // sigmoid(-m)
          double hess = rho * (1.0 - rho);
          samples[base + i].grad -= rho;
          samples[base + j].grad += rho;
          samples[base + i].hess += hess;
          samples[base + j].hess += hess;
        }
      }
      base += items.size();
    }

    RegressionTree tree = TreeBuilder(samples, num_features, config).Build();
    bool kept = false;
    for (int shrink = 0; shrink <= kMaxShrinks; ++shrink) {
      std::vector<std::vector<double>> trial = scores;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t i = 0; i < groups[g].items.size(); ++i) {
          trial[g][i] += tree.Predict(groups[g].items[i].features);
        }
      }
      double trial_loss = PairwiseLoss(groups, trial);
      if (trial_loss < loss) {
        scores = std::move(trial);
        loss = trial_loss;
        kept = true;
        break;
      }
      for (auto& n : tree.nodes) n.value *= 0.5;
    }
    if (!kept) {
      LogDebug("ranker: stopped after " + std::to_string(round) +
               " rounds, no tree lowers the loss");
      break;
    }
    model.trees.push_back(std::move(tree));
    model.loss_history.push_back(loss);
  }
  return model;
}

std::string RankerToJson(const RankerModel& model) {
  ojson doc;
  doc["format"] = kRankerFormat;
  doc["label_kind"] = model.label_kind;
  doc["schema"] = model.schema;
  doc["train_groups"] = model.train_groups;
  ojson cfg;
  cfg["rounds"] = model.config.rounds;
  cfg["max_depth"] = model.config.max_depth;
  cfg["learning_rate"] = model.config.learning_rate;
  cfg["min_leaf"] = model.config.min_leaf;
  cfg["l2"] = model.config.l2;
  cfg["seed"] = model.config.seed;
  doc["config"] = cfg;
  doc["loss_history"] = model.loss_history;
  doc["trees"] = ojson::array();
  for (const auto& t : model.trees) {
    doc["trees"].push_back(t.nodes.empty() ? ojson{{"leaf", 0.0}}
                                           : TreeJson(t, 0));
  }
  return doc.dump(1) + "\n";
}

RankerModel RankerFromJson(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("ranker: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kRankerFormat) {
    throw Error(std::string("ranker: expected format ") + kRankerFormat);
  }
  RankerModel m;
  try {
    m.label_kind = doc.at("label_kind").get<std::string>();
    m.schema = doc.at("schema").get<std::vector<std::string>>();
    m.train_groups = doc.at("train_groups").get<std::vector<std::string>>();
    const auto& cfg = doc.at("config");
    m.config.rounds = cfg.at("rounds").get<int>();
    m.config.max_depth = cfg.at("max_depth").get<int>();
    m.config.learning_rate = cfg.at("learning_rate").get<double>();
    m.config.min_leaf = cfg.at("min_leaf").get<int>();
    m.config.l2 = cfg.at("l2").get<double>();
    m.config.seed = cfg.at("seed").get<std::uint64_t>();
    m.loss_history = doc.at("loss_history").get<std::vector<double>>();
    for (const auto& t : doc.at("trees")) {
      RegressionTree tree;
      TreeFromJson(t, m.schema.size(), &tree);
      m.trees.push_back(std::move(tree));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("ranker: ") + e.what());
  }
  return m;
}

}  // namespace ubench
