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

#include "ubench/foreground.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ubench/error.h"

namespace ubench {

std::string ScaleLabelName(ScaleLabel v) {
  return v == ScaleLabel::kSmall ? "small" : "large";
}
std::string ShapeLabelName(ShapeLabel v) {
  return v == ShapeLabel::kIrregular ? "irregular" : "regular";
}
std::string BoundaryLabelName(BoundaryLabel v) {
  return v == BoundaryLabel::kBlur ? "blur" : "clear";
}

ScaleLabel ParseScaleLabel(const std::string& s) {
  if (s == "small") return ScaleLabel::kSmall;
  if (s == "large") return ScaleLabel::kLarge;
  throw Error("scale must be small or large, got '" + s + "'");
}
ShapeLabel ParseShapeLabel(const std::string& s) {
  if (s == "irregular") return ShapeLabel::kIrregular;
  if (s == "regular") return ShapeLabel::kRegular;
  throw Error("shape must be irregular or regular, got '" + s + "'");
}
BoundaryLabel ParseBoundaryLabel(const std::string& s) {
  if (s == "clear") return BoundaryLabel::kClear;
  if (s == "blur") return BoundaryLabel::kBlur;
  throw Error("boundary must be clear or blur, got '" + s + "'");
}

BandStats IntensityStats(const Mask& region, const GrayImage& image) {
  BandStats s;
  double sum = 0;
  for (std::size_t i = 0; i < region.labels.size(); ++i) {
    if (region.labels[i] == 0) continue;
    sum += image.intensity[i];
    ++s.count;
  }
  if (s.count == 0) return s;
  s.mean = sum / s.count;
  double ss = 0;
  for (std::size_t i = 0; i < region.labels.size(); ++i) {
    if (region.labels[i] == 0) continue;
    double d = image.intensity[i] - s.mean;
    ss += d * d;
  }
  s.stddev = std::sqrt(ss / s.count);
  return s;
}

double ContrastToNoise(const BandStats& inner, const BandStats& outer,
                       double epsilon) {
  return std::fabs(inner.mean - outer.mean) /
         (inner.stddev + outer.stddev + epsilon);
}

SampleForeground CharacterizeSample(const Mask& mask, const GrayImage& image,
                                    const ForegroundConfig& cfg) {
  if (mask.width != image.width || mask.height != image.height) {
    throw Error("mask and image dimensions differ");
  }
  SampleForeground s;
  s.band_width = cfg.band_width;
  const Mask bin = mask.Binary();
  s.foreground_area = static_cast<long long>(bin.ForegroundCount());
  const double total = static_cast<double>(bin.labels.size());
  s.area_ratio = total > 0 ? s.foreground_area / total : 0.0;
  if (s.foreground_area == 0) return s;

  s.shape_defined = true;
  s.perimeter = Perimeter(TraceContours(bin));
  const double p = s.perimeter > 0 ? s.perimeter : cfg.epsilon;
  s.circularity = 4.0 * std::numbers::pi * s.foreground_area / (p * p);
  s.convex_area = ConvexHullArea(bin);
  s.solidity = s.foreground_area / s.convex_area;
  s.shape_score = 0.5 * s.circularity + 0.5 * s.solidity;

  const Mask ring = BoundaryRing(bin, cfg.ring_radius);
  s.boundary_width = ring.ForegroundCount() / (s.perimeter + cfg.epsilon);
  const Mask inner = AndNot(bin, Erode(bin, cfg.band_width));
  const Mask outer = AndNot(Dilate(bin, cfg.band_width), bin);
  BandStats in = IntensityStats(inner, image);
  BandStats out = IntensityStats(outer, image);
  if (in.count > 0 && out.count > 0) {
    s.boundary_defined = true;
    s.cnr = ContrastToNoise(in, out, cfg.epsilon);
  }
  return s;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty list");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

DatasetForegroundProfile ProfileFromSamples(std::vector<SampleForeground> samples,
                                            const ForegroundConfig& cfg) {
  DatasetForegroundProfile prof;
  prof.samples = std::move(samples);
  const auto& ss = prof.samples;
  const std::size_t n = ss.size();
  prof.w_norm.assign(n, 0);
  prof.c_norm.assign(n, 0);
  prof.blur_score.assign(n, 0);

  std::vector<double> areas, shapes, blurs;
  double w_lo = 0, w_hi = 0, c_lo = 0, c_hi = 0;
  bool any_boundary = false;
  for (const auto& s : ss) {
    if (s.foreground_area > 0) areas.push_back(s.area_ratio);
    if (s.shape_defined) shapes.push_back(s.shape_score);
    if (!s.boundary_defined) continue;
    if (!any_boundary) {
      w_lo = w_hi = s.boundary_width;
      c_lo = c_hi = s.cnr;
      any_boundary = true;
    }
    w_lo = std::min(w_lo, s.boundary_width);
    w_hi = std::max(w_hi, s.boundary_width);
    c_lo = std::min(c_lo, s.cnr);
    c_hi = std::max(c_hi, s.cnr);
  }
  if (areas.empty()) throw Error("every sample has an empty foreground");
  if (!any_boundary) {
    throw Error("no sample has both an inner and an outer boundary band");
  }
  // A flat range maps to the neutral 0.5.
  auto scale = [](double v, double lo, double hi) {
    return hi > lo ? (v - lo) / (hi - lo) : 0.5;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!ss[i].boundary_defined) continue;
    prof.w_norm[i] = scale(ss[i].boundary_width, w_lo, w_hi);
    prof.c_norm[i] = scale(ss[i].cnr, c_lo, c_hi);
    prof.blur_score[i] =
        prof.w_norm[i] / (prof.w_norm[i] + prof.c_norm[i] + cfg.epsilon);
    blurs.push_back(prof.blur_score[i]);
  }
  prof.median_area_ratio = Median(areas);
  prof.median_shape_score = Median(shapes);
  prof.median_blur_score = Median(blurs);
  prof.scale_label = prof.median_area_ratio < cfg.small_below
                         ? ScaleLabel::kSmall
                         : ScaleLabel::kLarge;
  prof.shape_label = prof.median_shape_score < cfg.irregular_below
                         ? ShapeLabel::kIrregular
                         : ShapeLabel::kRegular;
  prof.boundary_label = prof.median_blur_score >= cfg.blur_at_or_above
                            ? BoundaryLabel::kBlur
                            : BoundaryLabel::kClear;
  return prof;
}

DatasetForegroundProfile CharacterizeDataset(
    const std::vector<MaskImagePair>& samples, const ForegroundConfig& cfg) {
  if (samples.empty()) throw Error("dataset has no samples");
  std::vector<SampleForeground> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back(CharacterizeSample(s.mask, s.image, cfg));
  }
  return ProfileFromSamples(std::move(out), cfg);
}

}  // namespace ubench
