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

#ifndef UBENCH_FOREGROUND_H_
#define UBENCH_FOREGROUND_H_

#include <string>
#include <vector>

#include "ubench/mask.h"

namespace ubench {

struct ForegroundConfig {
  int ring_radius = 1;
  int band_width = 3;  // inner/outer CNR band thickness
  double epsilon = 1e-6;
  double small_below = 0.05;      // area ratio
  double irregular_below = 0.5;   // shape score
  double blur_at_or_above = 0.6;  // blur score
};

struct SampleForeground {
  double area_ratio = 0;
  // Shape terms are meaningful only when shape_defined.
  bool shape_defined = false;
  double circularity = 0;
  double solidity = 0;
  double shape_score = 0;
  double perimeter = 0;
  long long foreground_area = 0;
  double convex_area = 0;
  // Boundary terms need nonempty inner and outer bands.
  bool boundary_defined = false;
  double boundary_width = 0;
  double cnr = 0;
  int band_width = 0;
};

enum class ScaleLabel { kSmall, kLarge };
enum class ShapeLabel { kIrregular, kRegular };
enum class BoundaryLabel { kClear, kBlur };

std::string ScaleLabelName(ScaleLabel v);
std::string ShapeLabelName(ShapeLabel v);
std::string BoundaryLabelName(BoundaryLabel v);
ScaleLabel ParseScaleLabel(const std::string& s);
ShapeLabel ParseShapeLabel(const std::string& s);
BoundaryLabel ParseBoundaryLabel(const std::string& s);

struct DatasetForegroundProfile {
  std::vector<SampleForeground> samples;
  // Parallel to samples; 0 where the boundary is undefined.
  std::vector<double> w_norm;
  std::vector<double> c_norm;
  std::vector<double> blur_score;
  double median_area_ratio = 0;
  double median_shape_score = 0;
  double median_blur_score = 0;
  ScaleLabel scale_label = ScaleLabel::kLarge;
  ShapeLabel shape_label = ShapeLabel::kRegular;
  BoundaryLabel boundary_label = BoundaryLabel::kClear;
};

// Mean and divide-by-N standard deviation.
struct BandStats {
  double mean = 0;
  double stddev = 0;
  long long count = 0;
};
BandStats IntensityStats(const Mask& region, const GrayImage& image);

// |mu_in - mu_out| / (sigma_in + sigma_out + eps).
double ContrastToNoise(const BandStats& inner, const BandStats& outer,
                       double epsilon);

// Any nonzero mask cell is foreground.
SampleForeground CharacterizeSample(const Mask& mask, const GrayImage& image,
                                    const ForegroundConfig& cfg = {});

// Normalizes boundary width and CNR across samples and labels the dataset
// from the per-sample medians.
DatasetForegroundProfile ProfileFromSamples(
    std::vector<SampleForeground> samples, const ForegroundConfig& cfg = {});

struct MaskImagePair {
  Mask mask;
  GrayImage image;
};
DatasetForegroundProfile CharacterizeDataset(
    const std::vector<MaskImagePair>& samples, const ForegroundConfig& cfg = {});

double Median(std::vector<double> values);

}  // namespace ubench

#endif  // UBENCH_FOREGROUND_H_
