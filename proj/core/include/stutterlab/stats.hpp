// stats.hpp
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
//
// Copyright 2026 The stutterlab authors

#ifndef STUTTERLAB_STATS_HPP_
#define STUTTERLAB_STATS_HPP_

#include <cstddef>
#include <span>

namespace stutterlab {

// Regularized incomplete beta function I_x(a,b), evaluated with the Lentz
// continued fraction. Absolute accuracy is around 1e-14 for the arguments
// used here (a, b up to a few thousand).
double RegularizedIncompleteBeta(double x, double a, double b);

// Two-sided tail probability of Student's t with `dof` degrees of freedom:
// P(|T| >= t) = I_{v/(v+t^2)}(v/2, 1/2).
double StudentTTwoSidedP(double t, double dof);

struct PearsonResult {
  double r;
  double p;  // two-sided, from t = r*sqrt((n-2)/(1-r^2))
  std::size_t n;
};

// Sample Pearson correlation with its two-sided p-value. Throws
// std::invalid_argument when n < 3 or either side has zero variance.
PearsonResult PearsonCorrelation(std::span<const double> xs,
                                 std::span<const double> ys);

// r alone, defined for n >= 2; used where the sample is too small for a
// meaningful p-value.
double PearsonR(std::span<const double> xs, std::span<const double> ys);

double Mean(std::span<const double> values);

}  // namespace stutterlab

#endif  // STUTTERLAB_STATS_HPP_
