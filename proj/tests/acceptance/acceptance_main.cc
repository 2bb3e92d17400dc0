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

// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.h"
#include "ubench/csv.h"
#include "ubench/digest.h"
#include "ubench/error.h"
#include "ubench/features.h"
#include "ubench/foreground.h"
#include "ubench/mask.h"
#include "ubench/rank_metrics.h"
#include "ubench/ranker.h"
#include "ubench/special_functions.h"
#include "ubench/stats.h"
#include "ubench/uscore.h"

namespace ubench {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;

// ---- pinned tolerances ----
constexpr double kChainA = 0.9231, kChainATol = 5e-5;
constexpr double kChainEff = 0.4605, kChainEffTol = 5e-4;
constexpr double kChainU = 0.6144, kChainUTol = 1e-3;
constexpr double kOracleRelTol = 1e-12;
constexpr int kFuzzTuples = 10000;
constexpr double kPOneToFive = 0.0132, kPOneToFiveTol = 1e-3;
constexpr double kTailGridTol = 1e-8;
constexpr int kIouPairs = 1000;
constexpr double kCircLo = 0.92, kCircHi = 1.08;
constexpr double kDiskSolidLo = 0.97, kDiskSolidHi = 1.0;
constexpr double kRectSolidTol = 0.02;
constexpr double kPlusSolidMax = 0.9;
constexpr double kNdcgExample = 0.8175, kMapExample = 0.8333, kRankTol = 1e-4;
constexpr double kPlantedNdcg5 = 0.9, kPlantedSpearman = 0.8;
constexpr int kControlSeeds = 50;
constexpr double kControlMaxAbsSpearman = 0.15;
constexpr std::size_t kHeldOutGroups = 3;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void Require(bool ok, const std::string& what) {
    if (ok) return;
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

bool Near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

bool RelNear(double x, double y, double rel) {
  return std::abs(x - y) <= rel * std::max(1.0, std::abs(y));
}

std::string Num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

QuantileBand Band(BandMetric m, double lo, double hi,
                  std::string key = kGlobalBandKey) {
  return {m, std::move(key), lo, hi};
}

BandSet ChainEfficiencyBands() {
  BandSet b;
  b.Add(Band(BandMetric::kParams, 0.39, 4.32));
  b.Add(Band(BandMetric::kFlops, 0.88, 4.20));
  b.Add(Band(BandMetric::kFps, 24.28, 121.63));
  return b;
}

const QuantileBand kChainIou = Band(BandMetric::kIou, 0.58, 0.71, "BUSI");

void GoldenChain(Outcome& o) {
  UScoreBreakdown b =
      ComputeBreakdown({0.70, 2.0, 2.0, 100}, kChainIou, ChainEfficiencyBands());
  auto ref = testing::UScoreChainOracle(
      0.70, 2.0, 2.0, 100, {0.58, 0.71, 0.39, 4.32, 0.88, 4.20, 24.28, 121.63});
  o.Require(Near(b.a, kChainA, kChainATol), "a=" + Num(b.a));
  o.Require(Near(b.eff, kChainEff, kChainEffTol), "eff=" + Num(b.eff));
  o.Require(Near(b.u, kChainU, kChainUTol), "u=" + Num(b.u));
  o.Require(RelNear(b.a, ref.a, kOracleRelTol) && RelNear(b.p, ref.p, kOracleRelTol) &&
                RelNear(b.g, ref.g, kOracleRelTol) &&
                RelNear(b.s, ref.s, kOracleRelTol) &&
                RelNear(b.eff, ref.eff, kOracleRelTol) &&
                RelNear(b.u, ref.u, kOracleRelTol),
            "differs from the decimal oracle");
  if (o.pass) {
    o.detail << "a=" << Num(b.a, 5) << " eff=" << Num(b.eff, 5)
             << " u=" << Num(b.u, 5);
  }
}

void PropertySuite(Outcome& o) {
  testing::Rng rng(314159);
  const BandSet eff = ChainEfficiencyBands();
  auto score = [&](const RawMetrics& r) { return ComputeBreakdown(r, kChainIou, eff); };
  int clip = 0, upper_bound = 0, monotone = 0, zero = 0;
  for (int i = 0; i < kFuzzTuples; ++i) {
    RawMetrics r{rng.Uniform(0.3, 0.95), std::exp(rng.Uniform(-2, 3)),
                 std::exp(rng.Uniform(-1, 2.5)), rng.Uniform(5, 200)};
    UScoreBreakdown b = score(r);
    for (double c : {b.a, b.p, b.g, b.s, b.eff, b.u}) clip += c < 0 || c > 1;
    // The bound as stated: u <= min(a, eff) and eff <= min(p, g, s).
    upper_bound += b.u > std::min(b.a, b.eff) || b.eff > std::min({b.p, b.g, b.s});
    if (b.a == 0 || b.p == 0 || b.g == 0 || b.s == 0) zero += b.u != 0;

    RawMetrics up = r;
    up.accuracy += rng.Uniform(0, 0.1);
    monotone += score(up).u < b.u;
    up = r;
    up.fps += rng.Uniform(0, 50);
    monotone += score(up).u < b.u;
    up = r;
    up.params *= std::exp(rng.Uniform(0, 1));
    monotone += score(up).u > b.u;
    up = r;
    up.flops *= std::exp(rng.Uniform(0, 1));
    monotone += score(up).u > b.u;
  }
  o.Require(clip == 0, std::to_string(clip) + " components outside [0,1]");
  o.Require(upper_bound == 0,
            std::to_string(upper_bound) + "/" + std::to_string(kFuzzTuples) +
                " tuples break u<=min(a,eff) or eff<=min(p,g,s)");
  o.Require(monotone == 0, std::to_string(monotone) + " monotonicity violations");
  o.Require(zero == 0, std::to_string(zero) + " zero-component tuples score above 0");
  if (!o.pass) o.detail << "; ";
  o.detail << kFuzzTuples << " tuples, clipping " << (clip ? "fails" : "holds")
           << ", monotonicity " << (monotone ? "fails" : "holds")
           << ", zero component " << (zero ? "fails" : "holds");
}

// Leaderboard CSV from an ingested registry: model -> percent with 2 decimals.
std::vector<std::pair<std::string, std::string>> Board(
    const std::vector<std::string>& args) {
  testing::CliResult r = testing::RunCli(args);
  if (r.rc != 0) throw Error("leaderboard failed: " + r.err);
  CsvTable t = ParseCsv(r.out, "leaderboard");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& row : t.rows) {
    out.emplace_back(row.cells[t.Column("model", "leaderboard")],
                     FormatFixed(100 * ParseDouble(row.cells[t.Column("value", "leaderboard")],
                                                   "value"),
                                 2));
  }
  return out;
}

void LeaderboardExactness(Outcome& o) {
  testing::TempDir dir;
  const std::string reg = (dir / "registry").string();
  testing::CliResult in = testing::RunCli(
      {"ingest", "--from", FixturePath("zoo").string(), "--registry", reg});
  o.Require(in.rc == 0, "ingest failed: " + in.err);
  if (!o.pass) return;
  auto iou = Board({"leaderboard", "--registry", reg, "--format", "csv"});
  auto rank_of = [&](const std::string& model) {
    for (std::size_t i = 0; i < iou.size(); ++i) {
      if (iou[i].first == model) return static_cast<int>(i);
    }
    return -1;
  };
  o.Require(iou.size() >= 2 && iou[0] == std::pair<std::string, std::string>{"RWKV-UNet", "79.84"},
            "rank 1 is " + (iou.empty() ? "" : iou[0].first + " " + iou[0].second));
  o.Require(iou.size() >= 2 && iou[1] == std::pair<std::string, std::string>{"UTANet", "79.43"},
            "rank 2 is " + (iou.size() < 2 ? "" : iou[1].first + " " + iou[1].second));
  int unet = rank_of("U-Net");
  o.Require(unet >= 0 && iou[unet].second == "78.31",
            "U-Net at " + (unet < 0 ? "none" : iou[unet].second));
  auto us = Board({"leaderboard", "--registry", reg, "--metric", "uscore",
                   "--uscore-values", FixturePath("zoo/published_uscore.csv").string(),
                   "--format", "csv"});
  o.Require(!us.empty() && us[0] == std::pair<std::string, std::string>{"LGMSNet", "84.99"},
            "U-Score rank 1 is " + (us.empty() ? "" : us[0].first + " " + us[0].second));
  if (o.pass) {
    o.detail << "RWKV-UNet 79.84, UTANet 79.43, U-Net 78.31 (rank " << unet + 1
             << "), LGMSNet 84.99";
  }
}

void TTestOracle(Outcome& o) {
  TTestResult r = PairedTTest({1, 2, 3, 4, 5}, {0, 0, 0, 0, 0});
  double oracle = 2 * testing::StudentTailByQuadrature(r.t_stat, r.df);
  o.Require(Near(r.p_two_sided, kPOneToFive, kPOneToFiveTol), "p=" + Num(r.p_two_sided));
  o.Require(Near(r.p_two_sided, oracle, kTailGridTol), "p differs from quadrature");
  double worst = 0;
  int points = 0;
  for (double df : {1.0, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0, 30.0, 60.0, 120.0}) {
    for (double t : {-2.5, 0.3, 1.0, 2.2, 4.0}) {
      worst = std::max(worst, std::abs(StudentTSf(t, df) -
                                       testing::StudentTailByQuadrature(t, df)));
      ++points;
    }
  }
  o.Require(points == 50 && worst <= kTailGridTol, "grid error " + Num(worst));
  const TierLegend legend;
  const Tier at[] = {Tier::kP001, Tier::kP01, Tier::kP05, Tier::kNotSignificant};
  const Tier below[] = {Tier::kP0001, Tier::kP001, Tier::kP01, Tier::kP05};
  for (int i = 0; i < 4; ++i) {
    double th = legend.thresholds[i];
    o.Require(Classify(th, 1, 0).tier == at[i] &&
                  Classify(std::nextafter(th, 0.0), 1, 0).tier == below[i],
              "tier boundary at " + Num(th) + " is not strict");
  }
  if (o.pass) {
    o.detail << "p=" << Num(r.p_two_sided, 4) << ", grid max error " << Num(worst, 2);
  }
}

void IouBruteForce(Outcome& o) {
  testing::Rng rng(2718);
  int mismatches = 0;
  for (int i = 0; i < kIouPairs; ++i) {
    Mask pred = testing::RandomMask(rng, 32, 32, 1, rng.Uniform());
    Mask truth = testing::RandomMask(rng, 32, 32, 1, rng.Uniform());
    mismatches += Iou(pred, truth) != testing::IouBySetCounting(pred, truth, 1);
  }
  o.Require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  if (o.pass) o.detail << kIouPairs << " pairs exact";
}

GrayImage TwoTone(const Mask& m) {
  GrayImage img(m.width, m.height, 50);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    if (m.labels[i]) img.intensity[i] = 200;
  }
  return img;
}

void Geometry(Outcome& o) {
  Mask disk = testing::Disk(128, 128, 64, 64, 50);
  SampleForeground d = CharacterizeSample(disk, TwoTone(disk));
  o.Require(d.circularity >= kCircLo && d.circularity <= kCircHi,
            "disk circularity " + Num(d.circularity));
  o.Require(d.solidity >= kDiskSolidLo && d.solidity <= kDiskSolidHi,
            "disk solidity " + Num(d.solidity));
  for (auto [w, h] : {std::pair{10, 10}, {20, 6}, {3, 30}, {41, 17}}) {
    Mask m = testing::Rect(64, 64, 5, 5, w, h);
    double s = CharacterizeSample(m, TwoTone(m)).solidity;
    o.Require(Near(s, 1.0, kRectSolidTol), "rectangle solidity " + Num(s));
  }
  Mask plus = testing::Plus(64, 64, 32, 32, 41, 7);
  double ps = CharacterizeSample(plus, TwoTone(plus)).solidity;
  o.Require(ps < kPlusSolidMax, "plus solidity " + Num(ps));
  std::size_t ring =
      BoundaryRing(testing::Rect(20, 20, 5, 5, 10, 10), 1).ForegroundCount();
  o.Require(ring == 80, "ring area " + std::to_string(ring));
  if (o.pass) {
    o.detail << "circularity " << Num(d.circularity, 4) << ", solidity "
             << Num(d.solidity, 4) << ", plus " << Num(ps, 3) << ", ring 80";
  }
}

void RankMetrics(Outcome& o) {
  double ndcg = NdcgAtK({1, 3, 2}, 3);
  double ap = AveragePrecision({true, false, true});
  double rho = Spearman({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5});
  o.Require(Near(ndcg, kNdcgExample, kRankTol), "NDCG@3 " + Num(ndcg));
  o.Require(Near(ap, kMapExample, kRankTol), "MAP " + Num(ap));
  o.Require(rho == 0.8, "Spearman " + Num(rho, 17));
  o.Require(NdcgAtK({3, 2, 1}, 3) == 1.0, "ideal NDCG");
  o.Require(AveragePrecision({true, true, false}) == 1.0, "ideal AP");
  o.Require(Spearman({1, 2, 3}, {10, 20, 30}) == 1.0 &&
                Spearman({1, 2, 3}, {30, 20, 10}) == -1.0,
            "Spearman endpoints");
  if (o.pass) {
    o.detail << "NDCG@3 " << Num(ndcg, 4) << ", MAP " << Num(ap, 4)
             << ", Spearman 0.8";
  }
}

void PlantedAdvisor(Outcome& o) {
  auto zoo = testing::MakePlantedZoo(1);
  auto split = testing::SplitPlanted(zoo.groups, kHeldOutGroups);
  RankerModel m = TrainRanker(split.train, FeatureSchema());
  RankEval e = EvaluateRanker(m, split.held_out, split.train_names);
  o.Require(e.ndcg.at(5) >= kPlantedNdcg5, "NDCG@5 " + Num(e.ndcg.at(5)));
  o.Require(e.spearman >= kPlantedSpearman, "Spearman " + Num(e.spearman));

  double sum_abs = 0;
  for (int seed = 0; seed < kControlSeeds; ++seed) {
    testing::Rng rng(seed);
    auto shuffled =
        testing::SplitPlanted(testing::ShuffleLabels(zoo.groups, rng), kHeldOutGroups);
    RankerConfig cfg;
    cfg.seed = seed;
    RankerModel c = TrainRanker(shuffled.train, FeatureSchema(), cfg);
    sum_abs += std::abs(EvaluateRanker(c, shuffled.held_out, shuffled.train_names).spearman);
  }
  double control = sum_abs / kControlSeeds;
  o.Require(control <= kControlMaxAbsSpearman, "control |Spearman| " + Num(control));
  o.detail << (o.pass ? "" : "; ") << "NDCG@5 " << Num(e.ndcg.at(5), 4)
           << ", Spearman " << Num(e.spearman, 4) << ", control |Spearman| "
           << Num(control, 3);
}

void Determinism(Outcome& o) {
  testing::TempDir a, b;
  auto first = testing::RunToyPipeline(a.path());
  auto second = testing::RunToyPipeline(b.path());
  for (const auto& [stage, text] : first) {
    o.Require(Sha256Hex(second.at(stage)) == Sha256Hex(text), stage + " differs");
  }
  const std::vector<std::string> zoo_ingest = {"ingest", "--from",
                                               FixturePath("zoo").string(),
                                               "--registry"};
  auto ingest = [&](const fs::path& dir) {
    auto args = zoo_ingest;
    args.push_back((dir / "registry").string());
    return testing::RunCli(args).out;
  };
  o.Require(Sha256Hex(ingest(a.path())) == Sha256Hex(ingest(b.path())),
            "zoo ingest differs");
  for (const char* file : {"models.json", "datasets.json", "records.csv"}) {
    o.Require(Sha256Hex(testing::Slurp(a / "registry" / file)) ==
                  Sha256Hex(testing::Slurp(b / "registry" / file)),
              std::string("registry ") + file + " differs");
  }
  if (o.pass) o.detail << first.size() << " stage outputs and the zoo registry match";
}

}  // namespace
}  // namespace ubench

int main() {
  using Check = std::function<void(ubench::Outcome&)>;
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"uscore-golden-chain", ubench::GoldenChain},
      {"uscore-properties", ubench::PropertySuite},
      {"leaderboard-fixture", ubench::LeaderboardExactness},
      {"ttest-oracle", ubench::TTestOracle},
      {"iou-brute-force", ubench::IouBruteForce},
      {"geometry", ubench::Geometry},
      {"rank-metrics", ubench::RankMetrics},
      {"advisor-planted", ubench::PlantedAdvisor},
      {"determinism", ubench::Determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    ubench::Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.Require(false, std::string("threw: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.str().c_str());
  }
  return failed == 0 ? 0 : 1;
}
