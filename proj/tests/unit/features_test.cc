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

#include <cmath>

#include "doctest.h"
#include "test_support.h"
#include "ubench/error.h"
#include "ubench/features.h"

namespace ubench {
namespace {

std::size_t Slot(const std::string& name) {
  const auto& schema = FeatureSchema();
  auto it = std::find(schema.begin(), schema.end(), name);
  REQUIRE(it != schema.end());
  return static_cast<std::size_t>(it - schema.begin());
}

TEST_SUITE("features") {

TEST_CASE("model bins") {
  CHECK(DiscretizeModel(34.53, 65.52, 137.05) ==
        ModelBins{StorageBin::kSmall, ComputeBin::kMedium, SpeedBin::kFast});
  CHECK(DiscretizeModel(10.0, 10.0, 60.0) ==
        ModelBins{StorageBin::kSmall, ComputeBin::kMedium, SpeedBin::kFast});
  CHECK(DiscretizeModel(0.04, 0.06, 5.15) ==
        ModelBins{StorageBin::kTiny, ComputeBin::kLow, SpeedBin::kSlow});
  CHECK(DiscretizeModel(200, 100, 15) ==
        ModelBins{StorageBin::kLarge, ComputeBin::kHigh, SpeedBin::kMedium});
  CHECK(DiscretizeModel(199.99, 99.99, 14.99) ==
        ModelBins{StorageBin::kMedium, ComputeBin::kMedium, SpeedBin::kSlow});
}

TEST_CASE("bins are monotone in the raw value") {
  testing::Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    double a = std::exp(rng.Uniform(-4, 7)), b = std::exp(rng.Uniform(-4, 7));
    ModelBins lo = DiscretizeModel(std::min(a, b), std::min(a, b), std::min(a, b));
    ModelBins hi = DiscretizeModel(std::max(a, b), std::max(a, b), std::max(a, b));
    CHECK(lo.storage <= hi.storage);
    CHECK(lo.compute <= hi.compute);
    CHECK(lo.speed <= hi.speed);
  }
}

TEST_CASE("dataset slots") {
  DatasetTraits t{"Ultrasound", ScaleLabel::kSmall, ShapeLabel::kIrregular,
                  BoundaryLabel::kBlur};
  auto v = DiscretizeDataset(t);
  REQUIRE(v.size() == 13);
  double ones = 0;
  for (std::size_t i = 0; i < 10; ++i) ones += v[i];
  CHECK(ones == 1);
  CHECK(v[*ModalityIndex("Ultrasound")] == 1);
  CHECK(v[10] == 1);
  CHECK(v[11] == 1);
  CHECK(v[12] == 1);

  DatasetTraits f{"Fundus", ScaleLabel::kLarge, ShapeLabel::kRegular,
                  BoundaryLabel::kClear};
  auto w = DiscretizeDataset(f);
  CHECK(w[*ModalityIndex("Fundus")] == 1);
  CHECK(w[10] == 0);
  CHECK(w[11] == 0);
  CHECK(w[12] == 0);

  CHECK_THROWS_AS(DiscretizeDataset({"Thermal"}), Error);
}

TEST_CASE("full feature vector") {
  CHECK(FeatureSchema().size() == 31);
  ModelCard m;
  m.name = "U-Net";
  m.family = Family::kMamba;
  m.params = 34.53;
  m.flops = 65.52;
  m.fps = 137.05;
  auto x = BuildFeatures({"MRI"}, m);
  REQUIRE(x.size() == 31);
  CHECK(x[Slot("storage_Small")] == 1);
  CHECK(x[Slot("storage_Tiny")] == 0);
  CHECK(x[Slot("compute_Medium")] == 1);
  CHECK(x[Slot("speed_Fast")] == 1);
  CHECK(x[Slot("family_Mamba")] == 1);
  CHECK(x[Slot("log_params")] == doctest::Approx(std::log(34.53)));
  CHECK(x[Slot("fps")] == 137.05);
}

TEST_CASE("traits file") {
  Registry reg;
  reg.datasets = {{"BUSI", "Ultrasound", Role::kSource, 1},
                  {"Kvasir", "Endoscopy", Role::kSource, 1}};
  auto traits = ParseTraitsCsv("dataset,scale,shape,boundary\n"
                               "BUSI,small,irregular,blur\n",
                               reg);
  REQUIRE(traits.size() == 1);
  CHECK(traits.at("BUSI").modality == "Ultrasound");
  CHECK(traits.at("BUSI").boundary == BoundaryLabel::kBlur);
  CHECK(ParseTraitsCsv(TraitsCsv(traits), reg).at("BUSI").scale ==
        ScaleLabel::kSmall);
  CHECK_THROWS_AS(ParseTraitsCsv("dataset,scale,shape,boundary\n"
                                 "Nowhere,small,regular,clear\n",
                                 reg),
                  Error);
  CHECK_THROWS_AS(ParseTraitsCsv("dataset,scale,shape,boundary\n"
                                 "BUSI,tiny,regular,clear\n",
                                 reg),
                  Error);
}

}

}  // namespace
}  // namespace ubench
