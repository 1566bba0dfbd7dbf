// Copyright 2026 The currloss Authors.
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

#include "currloss/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "currloss/errors.hpp"

namespace currloss {
namespace {

constexpr int kMaxHalleyIterations = 50;
constexpr double kStepTolerance = 1e-12;
constexpr double kE = 2.718281828459045;

double initial_guess(double x) {
  if (x < -0.25) {
    // Series around the branch point: w ~ -1 + p, p = sqrt(2(1 + e x)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (1.0 + kE * x)));
    return -1.0 + p - p * p / 3.0;
  }
  if (x > kE) {
    const double lx = std::log(x);
    return lx - std::log(lx);
  }
  // Pade-style guess, exact at 0 and reasonable up to e.
  return x / (1.0 + x) * (1.0 + 0.5 * std::log1p(x) / (1.0 + x));
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) {
    throw DomainError("lambert_w0: argument is NaN");
  }
  if (x < kLambertBranchPoint) {
    if (x < kLambertBranchPoint - kLambertClampTolerance) {
      throw DomainError("lambert_w0: argument " + std::to_string(x) +
                        " is below -1/e");
    }
    x = kLambertBranchPoint;
  }
  if (x == kLambertBranchPoint) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();

  double w = initial_guess(x);
  for (int i = 0; i < kMaxHalleyIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    // Near the branch point wp1 -> 0; the guess is already accurate there.
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::fabs(step) <= kStepTolerance * (1.0 + std::fabs(w))) break;
  }
  return w;
}

}  // namespace currloss
