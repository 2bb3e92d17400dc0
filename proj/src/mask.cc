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

#include "ubench/mask.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ubench/error.h"

namespace ubench {
namespace {

// Clockwise in image coordinates: E, SE, S, SW, W, NW, N, NE.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kWest = 4;

int DirectionOf(int dx, int dy) {
  for (int d = 0; d < 8; ++d) {
    if (kDx[d] == dx && kDy[d] == dy) return d;
  }
  return -1;
}

void CheckSameShape(const Mask& a, const Mask& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error("mask dimension mismatch: " + std::to_string(a.width) + "x" +
                std::to_string(a.height) + " vs " + std::to_string(b.width) +
                "x" + std::to_string(b.height));
  }
}

// Moore-neighbour trace of the component containing `start`, restricted to
// cells where `component[index] == id`.
Contour TraceComponent(const Mask& mask, const std::vector<int>& component,
                       int id, Point start) {
  auto inside = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < mask.width && y < mask.height &&
           component[mask.Index(x, y)] == id;
  };
  // Finds the next boundary pixel clockwise from the backtrack direction.
  // Returns false for an isolated pixel.
  auto step = [&](Point cur, int back, Point* next, int* next_back) {
    for (int k = 1; k <= 8; ++k) {
      int d = (back + k) % 8;
      int nx = cur.x + kDx[d];
      int ny = cur.y + kDy[d];
      if (inside(nx, ny)) {
        int pd = (back + k - 1) % 8;
        int px = cur.x + kDx[pd];
        int py = cur.y + kDy[pd];
        *next = {nx, ny};
        *next_back = DirectionOf(px - nx, py - ny);
        return true;
      }
    }
    return false;
  };

  Contour contour = {start};
  Point first_next;
  int back = 0;
  if (!step(start, kWest, &first_next, &back)) return contour;

  // Jacob's criterion: stop on re-entering the start pixel when the next move
  // repeats the first one.
  Point cur = first_next;
  const std::size_t limit = 8 * mask.labels.size() + 16;
  while (contour.size() < limit) {
    if (cur == start) {
      Point next = cur;
      int next_back = back;
      step(cur, back, &next, &next_back);
      if (next == first_next) break;
      contour.push_back(cur);
      cur = next;
      back = next_back;
      continue;
    }
    contour.push_back(cur);
    Point next = cur;
    int next_back = back;
    step(cur, back, &next, &next_back);
    cur = next;
    back = next_back;
  }
  return contour;
}

double Cross(const Point& o, const Point& a, const Point& b) {
  return static_cast<double>(a.x - o.x) * (b.y - o.y) -
         static_cast<double>(a.y - o.y) * (b.x - o.x);
}

}  // namespace

Mask::Mask(int w, int h) : width(w), height(h) {
  if (w < 0 || h < 0) throw Error("negative mask size");
  labels.assign(static_cast<std::size_t>(w) * h, 0);
}

std::size_t Mask::ForegroundCount() const {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](auto v) { return v != 0; }));
}

Mask Mask::Binary() const {
  Mask out = *this;
  for (auto& v : out.labels) v = v != 0 ? 1 : 0;
  return out;
}

GrayImage::GrayImage(int w, int h, double fill)
    : width(w), height(h), intensity(static_cast<std::size_t>(w) * h, fill) {}

double Iou(const Mask& pred, const Mask& truth, int class_count) {
  CheckSameShape(pred, truth);
  if (class_count < 1) throw Error("class_count must be >= 1");
  if (class_count == 1) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
      bool p = pred.labels[i] != 0;
      bool t = truth.labels[i] != 0;
      inter += p && t;
      uni += p || t;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
  }
  std::vector<std::size_t> inter(class_count + 1, 0), uni(class_count + 1, 0);
  for (std::size_t i = 0; i < pred.labels.size(); ++i) {
    int p = pred.labels[i];
    int t = truth.labels[i];
    if (p > class_count || t > class_count) {
      throw Error("mask label exceeds class_count " +
                  std::to_string(class_count));
    }
    if (p == t) {
      inter[p]++;
      uni[p]++;
    } else {
      uni[p]++;
      uni[t]++;
    }
  }
  double sum = 0;
  int present = 0;
  for (int c = 1; c <= class_count; ++c) {
    if (uni[c] == 0) continue;
    sum += static_cast<double>(inter[c]) / uni[c];
    ++present;
  }
  return present == 0 ? 1.0 : sum / present;
}

std::vector<Contour> TraceContours(const Mask& mask) {
  std::vector<int> component(mask.labels.size(), -1);
  std::vector<Contour> out;
  int next_id = 0;
  std::vector<Point> stack;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.At(x, y) == 0 || component[mask.Index(x, y)] >= 0) continue;
      // Raster order makes (x, y) the topmost-leftmost pixel of a new component.
      int id = next_id++;
      component[mask.Index(x, y)] = id;
      stack.push_back({x, y});
      while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        for (int d = 0; d < 8; ++d) {
          int nx = p.x + kDx[d];
          int ny = p.y + kDy[d];
          if (!mask.Foreground(nx, ny)) continue;
          int& c = component[mask.Index(nx, ny)];
          if (c >= 0) continue;
          c = id;
          stack.push_back({nx, ny});
        }
      }
      out.push_back(TraceComponent(mask, component, id, {x, y}));
    }
  }
  return out;
}

double ContourLength(const Contour& contour) {
  if (contour.size() < 2) return 0.0;
  int axis = 0, diagonal = 0;
  for (std::size_t i = 0; i < contour.size(); ++i) {
    const Point& a = contour[i];
    const Point& b = contour[(i + 1) % contour.size()];
    bool dx = a.x != b.x;
    bool dy = a.y != b.y;
    if (dx && dy) {
      ++diagonal;
    } else if (dx || dy) {
      ++axis;
    }
  }
  return axis + diagonal * std::sqrt(2.0);
}

double Perimeter(const std::vector<Contour>& contours) {
  double total = 0;
  for (const auto& c : contours) total += ContourLength(c);
  return total;
}

double ConvexHullArea(const Mask& mask) {
  std::vector<Point> pts;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.At(x, y) != 0) pts.push_back({x, y});
    }
  }
  if (pts.empty()) throw Error("convex hull of an empty mask");
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return 1.0;

  // Andrew's monotone chain; collinear points dropped.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && Cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);

  double twice_area = 0;
  double perimeter = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    twice_area += static_cast<double>(a.x) * b.y - static_cast<double>(b.x) * a.y;
    perimeter += std::hypot(b.x - a.x, b.y - a.y);
  }
  return std::fabs(twice_area) / 2.0 + perimeter / 2.0 + 1.0;
}

Mask Morph(const Mask& mask, MorphOp op, int radius) {
  if (radius < 1) throw Error("morphology radius must be >= 1");
  const int w = mask.width;
  const int h = mask.height;
  const int span = 2 * radius + 1;
  // Separable box: count foreground in a sliding window along rows, then
  // columns. Out-of-image cells count as background.
  auto pass = [&](const std::vector<std::uint8_t>& in, bool rows) {
    std::vector<std::uint8_t> out(in.size(), 0);
    int outer = rows ? h : w;
    int inner = rows ? w : h;
    std::vector<int> prefix(inner + 1);
    for (int o = 0; o < outer; ++o) {
      prefix[0] = 0;
      for (int i = 0; i < inner; ++i) {
        std::size_t idx = rows ? static_cast<std::size_t>(o) * w + i
                               : static_cast<std::size_t>(i) * w + o;
        prefix[i + 1] = prefix[i] + (in[idx] != 0);
      }
      for (int i = 0; i < inner; ++i) {
        int lo = std::max(0, i - radius);
        int hi = std::min(inner, i + radius + 1);
        int count = prefix[hi] - prefix[lo];
        bool on = op == MorphOp::kDilate ? count > 0 : count == span;
        std::size_t idx = rows ? static_cast<std::size_t>(o) * w + i
                               : static_cast<std::size_t>(i) * w + o;
        out[idx] = on ? 1 : 0;
      }
    }
    return out;
  };
  Mask out(w, h);
  out.labels = pass(pass(mask.labels, true), false);
  return out;
}

Mask AndNot(const Mask& a, const Mask& b) {
  CheckSameShape(a, b);
  Mask out(a.width, a.height);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    out.labels[i] = (a.labels[i] != 0 && b.labels[i] == 0) ? 1 : 0;
  }
  return out;
}

Mask BoundaryRing(const Mask& mask, int radius) {
  return AndNot(Dilate(mask, radius), Erode(mask, radius));
}

}  // namespace ubench
