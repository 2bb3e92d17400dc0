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

#ifndef UBENCH_MASK_H_
#define UBENCH_MASK_H_

#include <cstdint>
#include <vector>

namespace ubench {

// Row-major label grid. 0 is background; any other value is a class id.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;

  Mask() = default;
  Mask(int w, int h);

  std::uint8_t At(int x, int y) const { return labels[Index(x, y)]; }
  void Set(int x, int y, std::uint8_t v) { labels[Index(x, y)] = v; }
  bool Foreground(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height && At(x, y) != 0;
  }
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  std::size_t ForegroundCount() const;
  // Every nonzero label becomes 1.
  Mask Binary() const;

  bool operator==(const Mask&) const = default;
};

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> intensity;  // [0,255]

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0);
  double At(int x, int y) const {
    return intensity[static_cast<std::size_t>(y) * width + x];
  }
};

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

using Contour = std::vector<Point>;

// Overlap between prediction and truth. For class_count 1 every nonzero cell
// is foreground. For more classes, the mean over classes 1..class_count that
// occur in either mask. Two empty masks score 1.
double Iou(const Mask& pred, const Mask& truth, int class_count = 1);

// Outer boundary of every 8-connected foreground component, ordered by the
// component's topmost-then-leftmost pixel. Each contour starts at that pixel
// and runs clockwise (image coordinates, y down).
std::vector<Contour> TraceContours(const Mask& mask);

// Closed chain length: 1 per axis step, sqrt(2) per diagonal step.
double Perimeter(const std::vector<Contour>& contours);
double ContourLength(const Contour& contour);

// Convex hull of foreground pixel centers (shoelace area) plus half the hull
// perimeter plus one, so a filled w x h rectangle gives w*h.
double ConvexHullArea(const Mask& mask);

enum class MorphOp { kDilate, kErode };

// Binary morphology with a (2r+1)^2 box. Cells outside the image are
// background. The result is binary.
Mask Morph(const Mask& mask, MorphOp op, int radius);
inline Mask Dilate(const Mask& m, int r) { return Morph(m, MorphOp::kDilate, r); }
inline Mask Erode(const Mask& m, int r) { return Morph(m, MorphOp::kErode, r); }

// dilate(mask, r) AND NOT erode(mask, r).
Mask BoundaryRing(const Mask& mask, int radius);

// Cell-wise a AND NOT b on binary views.
Mask AndNot(const Mask& a, const Mask& b);

}  // namespace ubench

#endif  // UBENCH_MASK_H_
