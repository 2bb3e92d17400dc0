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

#ifndef UBENCH_FEATURES_H_
#define UBENCH_FEATURES_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ubench/foreground.h"
#include "ubench/registry.h"

namespace ubench {

enum class StorageBin { kTiny, kSmall, kMedium, kLarge };
enum class ComputeBin { kLow, kMedium, kHigh };
enum class SpeedBin { kSlow, kMedium, kFast };

std::string StorageBinName(StorageBin b);
std::string ComputeBinName(ComputeBin b);
std::string SpeedBinName(SpeedBin b);
std::optional<StorageBin> ParseStorageBin(std::string_view text);
std::optional<ComputeBin> ParseComputeBin(std::string_view text);
std::optional<SpeedBin> ParseSpeedBin(std::string_view text);

struct ModelBins {
  StorageBin storage = StorageBin::kTiny;
  ComputeBin compute = ComputeBin::kLow;
  SpeedBin speed = SpeedBin::kSlow;
  bool operator==(const ModelBins&) const = default;
};

// Half-open bins; a boundary value lands in the upper bin.
// storage [0,10) [10,50) [50,200) [200,inf) M params
// compute [0,10) [10,100) [100,inf) GFLOPs
// speed   [0,15) [15,60) [60,inf) FPS
ModelBins DiscretizeModel(double params, double flops, double fps);

struct DatasetTraits {
  std::string modality;
  ScaleLabel scale = ScaleLabel::kLarge;
  ShapeLabel shape = ShapeLabel::kRegular;
  BoundaryLabel boundary = BoundaryLabel::kClear;
};

// Modality one-hot (10) then scale_small, shape_irregular, boundary_blur.
std::vector<double> DiscretizeDataset(const DatasetTraits& traits);

// 31 names: dataset slots, then storage (4), compute (3), speed (3),
// family (5), log_params, log_flops, fps.
const std::vector<std::string>& FeatureSchema();

std::vector<double> BuildFeatures(const DatasetTraits& traits,
                                  const ModelCard& model);

// traits.csv: dataset,scale,shape,boundary. Modality comes from the card.
std::map<std::string, DatasetTraits> ParseTraitsCsv(
    std::string_view text, const Registry& registry,
    std::string_view context = "traits.csv");
std::string TraitsCsv(const std::map<std::string, DatasetTraits>& traits);

inline constexpr char kTraitsFile[] = "traits.csv";

}  // namespace ubench

#endif  // UBENCH_FEATURES_H_
