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

#ifndef UBENCH_SPECIAL_FUNCTIONS_H_
#define UBENCH_SPECIAL_FUNCTIONS_H_

namespace ubench {

// I_x(a, b) by Lentz's continued fraction. a, b > 0; x in [0, 1].
double RegularizedIncompleteBeta(double x, double a, double b);

// P(T > t) for Student's t with `df` degrees of freedom. df >= 1.
double StudentTSf(double t, double df);

// P(|T| >= |t|).
double StudentTTwoSided(double t, double df);

}  // namespace ubench

#endif  // UBENCH_SPECIAL_FUNCTIONS_H_
