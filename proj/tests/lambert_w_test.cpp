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

#include <gtest/gtest.h>

#include "currloss/errors.hpp"
#include "oracles.hpp"

namespace currloss {
namespace {

TEST(LambertW0, FixedPoints) {
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(testing::kE), 1.0, 1e-12);
  EXPECT_EQ(lambert_w0(kLambertBranchPoint), -1.0);
}

TEST(LambertW0, OmegaConstantMatchesBisection) {
  const double omega = testing::bisect_lambert(1.0, 0.0, 1.0);
  EXPECT_NEAR(omega, 0.5671432904, 1e-10);
  EXPECT_NEAR(lambert_w0(1.0), omega, 1e-11);
}

TEST(LambertW0, ResidualBound) {
  for (double x = -0.3678; x < 1e4; x = x < 1 ? x + 0.0137 : x * 1.37) {
    const double w = lambert_w0(x);
    EXPECT_LE(std::fabs(w * std::exp(w) - x), 1e-10 * std::max(1.0, std::fabs(x)))
        << "x=" << x;
    EXPECT_GE(w, -1.0);
  }
}

TEST(LambertW0, RoundTripGrid) {
  for (int k = 0; k <= 2100; ++k) {
    const double w = -1.0 + 0.01 * k;
    const double x = w * std::exp(w);
    EXPECT_LE(std::fabs(lambert_w0(x) - w), 1e-9 * std::max(1.0, std::fabs(w)))
        << "w=" << w;
  }
}

TEST(LambertW0, MonotoneOverDomain) {
  double prev = lambert_w0(kLambertBranchPoint);
  for (double x = kLambertBranchPoint + 1e-4; x < 50.0; x += 1e-3) {
    const double w = lambert_w0(x);
    ASSERT_LE(prev, w) << "x=" << x;
    prev = w;
  }
}

TEST(LambertW0, ClampsRoundingNoiseBelowBranchPoint) {
  EXPECT_EQ(lambert_w0(kLambertBranchPoint - 5e-13), -1.0);
  EXPECT_THROW(lambert_w0(kLambertBranchPoint - 1e-9), DomainError);
  EXPECT_THROW(lambert_w0(-1.0), DomainError);
  EXPECT_THROW(lambert_w0(std::nan("")), DomainError);
}

TEST(LambertW0, NearBranchPointSeriesRegion) {
  // Just above -1/e the principal branch rises like sqrt.
  const double x = kLambertBranchPoint + 1e-10;
  const double w = lambert_w0(x);
  EXPECT_GT(w, -1.0);
  EXPECT_NEAR(w * std::exp(w), x, 1e-15);
}

TEST(LambertW0, LargeArguments) {
  for (double x : {1e3, 1e8, 1e15, 1e300}) {
    const double w = lambert_w0(x);
    EXPECT_NEAR((std::log(w) + w) / std::log(x), 1.0, 1e-12) << x;
  }
  EXPECT_TRUE(std::isinf(lambert_w0(INFINITY)));
}

}  // namespace
}  // namespace currloss
