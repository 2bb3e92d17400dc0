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

#include "test_support.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unistd.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include "ubench/cli.h"
#include "ubench/features.h"
#include "ubench/png_io.h"

namespace ubench::testing {

namespace fs = std::filesystem;

fs::path FixturePath(const std::string& relative) {
  return fs::path(UBENCH_SOURCE_DIR) / "fixtures" / relative;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("ubench-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::uint64_t Rng::Next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

double Rng::Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

int Rng::Int(int lo, int hi) {
  return lo + static_cast<int>(Next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Mask Disk(int width, int height, int cx, int cy, double radius) {
  Mask m(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy < radius * radius) m.Set(x, y, 1);
    }
  }
  return m;
}

Mask Rect(int width, int height, int x0, int y0, int w, int h) {
  Mask m(width, height);
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) m.Set(x, y, 1);
  }
  return m;
}

Mask Plus(int width, int height, int cx, int cy, int span, int arm) {
  Mask m(width, height);
  int half = span / 2, a = arm / 2;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      bool horizontal = std::abs(x - cx) <= half && std::abs(y - cy) <= a;
      bool vertical = std::abs(y - cy) <= half && std::abs(x - cx) <= a;
      if (horizontal || vertical) m.Set(x, y, 1);
    }
  }
  return m;
}

Mask RandomMask(Rng& rng, int width, int height, int max_label,
                double density) {
  Mask m(width, height);
  for (auto& v : m.labels) {
    if (rng.Uniform() < density) v = static_cast<std::uint8_t>(rng.Int(1, max_label));
  }
  return m;
}

double StudentTailByQuadrature(double t, double df) {
  if (t < 0) return 1.0 - StudentTailByQuadrature(-t, df);
  const double log_norm = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                          0.5 * std::log(df * M_PI);
  auto density = [&](double x) {
    return std::exp(log_norm - (df + 1) / 2 * std::log1p(x * x / df));
  };
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(
      density, t, std::numeric_limits<double>::infinity(), 20, 1e-15);
}

double IouBySetCounting(const Mask& pred, const Mask& truth, int class_count) {
  using Cell = std::pair<int, int>;
  auto cells_of = [](const Mask& m, int label, bool any) {
    std::set<Cell> out;
    for (int y = 0; y < m.height; ++y) {
      for (int x = 0; x < m.width; ++x) {
        int v = m.At(x, y);
        if (any ? v != 0 : v == label) out.insert({x, y});
      }
    }
    return out;
  };
  auto iou = [](const std::set<Cell>& p, const std::set<Cell>& t) {
    std::set<Cell> both, either = p;
    for (const auto& c : t) {
      if (p.count(c)) both.insert(c);
      either.insert(c);
    }
    return static_cast<double>(both.size()) / static_cast<double>(either.size());
  };
  if (class_count == 1) {
    auto p = cells_of(pred, 0, true), t = cells_of(truth, 0, true);
    if (p.empty() && t.empty()) return 1.0;
    return iou(p, t);
  }
  double sum = 0;
  int present = 0;
  for (int c = 1; c <= class_count; ++c) {
    auto p = cells_of(pred, c, false), t = cells_of(truth, c, false);
    if (p.empty() && t.empty()) continue;
    sum += iou(p, t);
    ++present;
  }
  return present == 0 ? 1.0 : sum / present;
}

ChainOracle UScoreChainOracle(double iou, double params, double flops,
                              double fps, const ChainBands& b) {
  using D = boost::multiprecision::cpp_dec_float_50;
  auto clip = [](D v) { return v < 0 ? D(0) : (v > 1 ? D(1) : v); };
  auto linear = [&](double v, double lo, double hi) {
    return clip((D(v) - D(lo)) / (D(hi) - D(lo)));
  };
  auto log_cost = [&](double v, double lo, double hi) {
    using boost::multiprecision::log;
    return clip((log(D(hi)) - log(D(v))) / (log(D(hi)) - log(D(lo))));
  };
  D a = linear(iou, b.iou_lo, b.iou_hi);
  D p = log_cost(params, b.params_lo, b.params_hi);
  D g = log_cost(flops, b.flops_lo, b.flops_hi);
  D s = linear(fps, b.fps_lo, b.fps_hi);
  D eff = (p == 0 || g == 0 || s == 0) ? D(0) : D(3) / (1 / p + 1 / g + 1 / s);
  D u = (a == 0 || eff == 0) ? D(0) : D(2) / (1 / a + 1 / eff);
  return {a.convert_to<double>(),   p.convert_to<double>(),
          g.convert_to<double>(),   s.convert_to<double>(),
          eff.convert_to<double>(), u.convert_to<double>()};
}

double PlantedUtility(const ModelCard& model) {
  ModelBins b = DiscretizeModel(model.params, model.flops, model.fps);
  return (b.speed == SpeedBin::kFast ? 1.0 : 0.0) +
         (b.storage == StorageBin::kTiny ? 1.0 : 0.0) -
         (b.compute == ComputeBin::kHigh ? 1.0 : 0.0);
}

PlantedZoo MakePlantedZoo(std::uint64_t seed) {
  Rng rng(seed);
  PlantedZoo zoo;
  const auto& families = AllFamilies();
  for (int i = 0; i < 20; ++i) {
    ModelCard m;
    m.name = (i < 10 ? "M0" : "M") + std::to_string(i);
    m.family = families[i % families.size()];
    m.year = 2015 + i % 10;
    m.params = std::exp(rng.Uniform(std::log(0.05), std::log(400.0)));
    m.flops = std::exp(rng.Uniform(std::log(0.05), std::log(400.0)));
    m.fps = rng.Uniform(3.0, 250.0);
    zoo.models.push_back(m);
  }
  std::map<std::string, double> utility;
  for (const auto& m : zoo.models) utility[m.name] = PlantedUtility(m);
  auto relevance = RelevanceLabels(utility);
  for (int g = 0; g < 10; ++g) {
    DatasetTraits t;
    t.modality = Modalities()[g % Modalities().size()];
    t.scale = (g & 1) ? ScaleLabel::kSmall : ScaleLabel::kLarge;
    t.shape = (g & 2) ? ShapeLabel::kIrregular : ShapeLabel::kRegular;
    t.boundary = (g & 4) ? BoundaryLabel::kBlur : BoundaryLabel::kClear;
    RankingGroup group;
    group.dataset = "G" + std::to_string(g);
    for (const auto& m : zoo.models) {
      group.items.push_back({m.name, BuildFeatures(t, m), relevance.at(m.name)});
    }
    zoo.groups.push_back(std::move(group));
  }
  return zoo;
}

std::vector<RankingGroup> ShuffleLabels(std::vector<RankingGroup> groups,
                                        Rng& rng) {
  for (auto& g : groups) {
    std::vector<double> rel;
    for (const auto& it : g.items) rel.push_back(it.relevance);
    rng.Shuffle(rel);
    for (std::size_t i = 0; i < rel.size(); ++i) g.items[i].relevance = rel[i];
  }
  return groups;
}

PlantedSplit SplitPlanted(const std::vector<RankingGroup>& groups,
                          std::size_t held_out) {
  std::vector<RankingGroup> sorted = groups;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.dataset < b.dataset; });
  PlantedSplit split;
  std::size_t cut = sorted.size() - std::min(held_out, sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i < cut) {
      split.train_names.push_back(sorted[i].dataset);
      split.train.push_back(sorted[i]);
    } else {
      split.held_out.push_back(sorted[i]);
    }
  }
  return split;
}

CliResult RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int rc = Run(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

// Disks of growing radius on a flat background.
void WriteSamples(const fs::path& masks, const fs::path& images) {
  fs::create_directories(masks);
  fs::create_directories(images);
  for (int i = 0; i < 4; ++i) {
    Mask m = Disk(48, 48, 24, 24, 6 + 2 * i);
    GrayImage img(48, 48, 40);
    for (std::size_t p = 0; p < m.labels.size(); ++p) {
      if (m.labels[p]) img.intensity[p] = 200;
    }
    std::string name = "s" + std::to_string(i) + ".png";
    WriteMaskPng(masks / name, m);
    WriteGrayPng(images / name, img);
  }
}

}  // namespace

std::map<std::string, std::string> RunToyPipeline(const fs::path& dir) {
  const std::string reg = (dir / "registry").string();
  auto run = [](const std::vector<std::string>& args) {
    CliResult r = RunCli(args);
    if (r.rc != 0) {
      throw std::runtime_error(args[0] + " exited " + std::to_string(r.rc) +
                               ": " + r.err);
    }
    return r.out;
  };
  std::map<std::string, std::string> out;
  out["ingest"] = run({"ingest", "--from", FixturePath("toy").string(),
                       "--registry", reg});
  WriteSamples(dir / "masks", dir / "images");
  run({"characterize", "--masks", (dir / "masks").string(), "--images",
       (dir / "images").string(), "--dataset", "DS-T", "--registry", reg,
       "--out", (dir / "profile.json").string()});
  out["profile"] = Slurp(dir / "profile.json");
  out["traits"] = Slurp(dir / "registry" / "traits.csv");
  out["score"] = run({"score", "--registry", reg, "--bands-out",
                      (dir / "bands.csv").string()});
  out["bands"] = Slurp(dir / "bands.csv");
  out["score_target"] = run({"score", "--registry", reg, "--scope", "target",
                             "--format", "json"});
  out["significance"] = run({"significance", "--registry", reg});
  out["leaderboard"] = run({"leaderboard", "--registry", reg});
  out["leaderboard_uscore"] = run({"leaderboard", "--registry", reg, "--metric",
                                   "uscore", "--format", "csv"});
  out["families"] = run({"leaderboard", "--registry", reg, "--view", "families"});
  out["yearly"] = run({"leaderboard", "--registry", reg, "--view", "yearly",
                       "--format", "json"});
  const std::string ranker = (dir / "ranker.json").string();
  run({"advisor-train", "--registry", reg, "--label-kind", "iou", "--holdout",
       "DS-C", "--rounds", "20", "--min-leaf", "1", "--out", ranker});
  out["ranker"] = Slurp(ranker);
  out["eval"] = run({"advisor-eval", "--registry", reg, "--ranker", ranker});
  out["advise"] = run({"advise", "--registry", reg, "--ranker", ranker,
                       "--dataset", "DS-T", "--storage", "Tiny"});
  return out;
}

}  // namespace ubench::testing
