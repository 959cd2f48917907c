// tcs/logmath.h

// Copyright 2026  The TCS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TCS_LOGMATH_H_
#define TCS_LOGMATH_H_

#include <cmath>
#include <limits>
#include <span>

namespace tcs {

// log(0); the additive identity of log-domain sums.
constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// Stable log(exp(a) + exp(b)). Either argument may be kLogZero.
inline double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kLogZero) return a;  // also covers a == b == kLogZero
  return a + std::log1p(std::exp(b - a));
}

// Stable log of a sum of exponentials over a span of log-domain values.
// An empty span or all-kLogZero input yields kLogZero.
inline double log_sum_exp(std::span<const double> values) {
  double max = kLogZero;
  for (double v : values) max = std::max(max, v);
  if (max == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

}  // namespace tcs

#endif  // TCS_LOGMATH_H_
