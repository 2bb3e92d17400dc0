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

#include "ubench/features.h"

#include <cmath>

#include "ubench/csv.h"
#include "ubench/error.h"

namespace ubench {

std::string StorageBinName(StorageBin b) {
  switch (b) {
    case StorageBin::kTiny: return "Tiny";
    case StorageBin::kSmall: return "Small";
    case StorageBin::kMedium: return "Medium";
    case StorageBin::kLarge: return "Large";
  }
  return "";
}

std::string ComputeBinName(ComputeBin b) {
  switch (b) {
    case ComputeBin::kLow: return "Low";
    case ComputeBin::kMedium: return "Medium";
    case ComputeBin::kHigh: return "High";
  }
  return "";
}

std::string SpeedBinName(SpeedBin b) {
  switch (b) {
    case SpeedBin::kSlow: return "Slow";
    case SpeedBin::kMedium: return "Medium";
    case SpeedBin::kFast: return "Fast";
  }
  return "";
}

std::optional<StorageBin> ParseStorageBin(std::string_view text) {
  for (auto b : {StorageBin::kTiny, StorageBin::kSmall, StorageBin::kMedium,
                 StorageBin::kLarge}) {
    if (StorageBinName(b) == text) return b;
  }
  return std::nullopt;
}

std::optional<ComputeBin> ParseComputeBin(std::string_view text) {
  for (auto b : {ComputeBin::kLow, ComputeBin::kMedium, ComputeBin::kHigh}) {
    if (ComputeBinName(b) == text) return b;
  }
  return std::nullopt;
}

std::optional<SpeedBin> ParseSpeedBin(std::string_view text) {
  for (auto b : {SpeedBin::kSlow, SpeedBin::kMedium, SpeedBin::kFast}) {
    if (SpeedBinName(b) == text) return b;
  }
  return std::nullopt;
}

ModelBins DiscretizeModel(double params, double flops, double fps) {
  if (!(params > 0) || !(flops > 0) || !(fps > 0)) {
    throw Error("params, flops and fps must be > 0");
  }
  ModelBins b;
  b.storage = params < 10    ? StorageBin::kTiny
              : params < 50  ? StorageBin::kSmall
              : params < 200 ? StorageBin::kMedium
                             : StorageBin::kLarge;
  b.compute = flops < 10    ? ComputeBin::kLow
              : flops < 100 ? ComputeBin::kMedium
                            : ComputeBin::kHigh;
  b.speed = fps < 15   ? SpeedBin::kSlow
            : fps < 60 ? SpeedBin::kMedium
                       : SpeedBin::kFast;
  return b;
}

std::vector<double> DiscretizeDataset(const DatasetTraits& traits) {
  auto idx = ModalityIndex(traits.modality);
  if (!idx) throw Error("unknown modality '" + traits.modality + "'");
  std::vector<double> out(Modalities().size() + 3, 0.0);
  out[*idx] = 1.0;
  std::size_t base = Modalities().size();
  out[base] = traits.scale == ScaleLabel::kSmall ? 1.0 : 0.0;
  out[base + 1] = traits.shape == ShapeLabel::kIrregular ? 1.0 : 0.0;
  out[base + 2] = traits.boundary == BoundaryLabel::kBlur ? 1.0 : 0.0;
  return out;
}

const std::vector<std::string>& FeatureSchema() {
  static const std::vector<std::string> kSchema = [] {
    std::vector<std::string> s;
    for (const auto& m : Modalities()) s.push_back("modality_" + m);
    s.push_back("scale_small");
    s.push_back("shape_irregular");
    s.push_back("boundary_blur");
    for (auto b : {StorageBin::kTiny, StorageBin::kSmall, StorageBin::kMedium,
                   StorageBin::kLarge}) {
      s.push_back("storage_" + StorageBinName(b));
    }
    for (auto b : {ComputeBin::kLow, ComputeBin::kMedium, ComputeBin::kHigh}) {
      s.push_back("compute_" + ComputeBinName(b));
    }
    for (auto b : {SpeedBin::kSlow, SpeedBin::kMedium, SpeedBin::kFast}) {
      s.push_back("speed_" + SpeedBinName(b));
    }
    for (Family f : AllFamilies()) s.push_back("family_" + FamilyName(f));
    s.push_back("log_params");
    s.push_back("log_flops");
    s.push_back("fps");
    return s;
  }();
  return kSchema;
}

std::vector<double> BuildFeatures(const DatasetTraits& traits,
                                  const ModelCard& model) {
  std::vector<double> x = DiscretizeDataset(traits);
  ModelBins bins = DiscretizeModel(model.params, model.flops, model.fps);
  auto push_onehot = [&](int n, int hot) {
    for (int i = 0; i < n; ++i) x.push_back(i == hot ? 1.0 : 0.0);
  };
  push_onehot(4, static_cast<int>(bins.storage));
  push_onehot(3, static_cast<int>(bins.compute));
  push_onehot(3, static_cast<int>(bins.speed));
  push_onehot(5, static_cast<int>(model.family));
  x.push_back(std::log(model.params));
  x.push_back(std::log(model.flops));
  x.push_back(model.fps);
  return x;
}

std::map<std::string, DatasetTraits> ParseTraitsCsv(std::string_view text,
                                                    const Registry& registry,
                                                    std::string_view context) {
  CsvTable t = ParseCsv(text, context);
  std::size_t c_dataset = t.Column("dataset", context);
  std::size_t c_scale = t.Column("scale", context);
  std::size_t c_shape = t.Column("shape", context);
  std::size_t c_boundary = t.Column("boundary", context);
  std::map<std::string, DatasetTraits> out;
  for (const auto& row : t.rows) {
    std::string where = std::string(context) + ":" + std::to_string(row.line);
    const DatasetCard* card = registry.FindDataset(row.cells[c_dataset]);
    if (card == nullptr) {
      throw Error(where + ": unknown dataset '" + row.cells[c_dataset] + "'");
    }
    DatasetTraits tr;
    tr.modality = card->modality;
    try {
      tr.scale = ParseScaleLabel(row.cells[c_scale]);
      tr.shape = ParseShapeLabel(row.cells[c_shape]);
      tr.boundary = ParseBoundaryLabel(row.cells[c_boundary]);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    if (!out.emplace(card->name, tr).second) {
      throw Error(where + ": duplicate dataset");
    }
  }
  return out;
}

std::string TraitsCsv(const std::map<std::string, DatasetTraits>& traits) {
  std::string out = CsvLine({"dataset", "scale", "shape", "boundary"});
  for (const auto& [name, t] : traits) {
    out += CsvLine({name, ScaleLabelName(t.scale), ShapeLabelName(t.shape),
                    BoundaryLabelName(t.boundary)});
  }
  return out;
}

}  // namespace ubench
