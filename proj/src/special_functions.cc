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

#include "ubench/special_functions.h"

#include <cmath>
#include <limits>
#include <string>

#include "ubench/error.h"

namespace ubench {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;

// Continued fraction for I_x(a, b), valid for x < (a + 1) / (a + b + 2).
double BetaContinuedFraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta did not converge");
}

}  // namespace

double RegularizedIncompleteBeta(double x, double a, double b) {
  if (!(a > 0) || !(b > 0)) throw Error("incomplete beta needs a, b > 0");
  if (!(x >= 0 && x <= 1)) throw Error("incomplete beta needs x in [0,1]");
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(x, a, b) / a;
  }
  return 1.0 - front * BetaContinuedFraction(1.0 - x, b, a) / b;
}

double StudentTSf(double t, double df) {
  if (!(df >= 1)) throw Error("student t needs df >= 1");
  if (std::isnan(t)) throw Error("student t of NaN");
  if (t == 0) return 0.5;
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * RegularizedIncompleteBeta(x, df / 2.0, 0.5);
  return t > 0 ? tail : 1.0 - tail;
}

double StudentTTwoSided(double t, double df) {
  if (!(df >= 1)) throw Error("student t needs df >= 1");
  if (std::isinf(t)) return 0.0;
  if (t == 0) return 1.0;
  const double x = df / (df + t * t);
  double p = RegularizedIncompleteBeta(x, df / 2.0, 0.5);
  return p < 0 ? 0.0 : (p > 1 ? 1.0 : p);
}

}  // namespace ubench
