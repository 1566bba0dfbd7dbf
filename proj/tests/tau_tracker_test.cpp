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

#include "currloss/tau_tracker.hpp"

#include <cmath>
#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "currloss/errors.hpp"
#include "currloss/random.hpp"

namespace currloss {
namespace {

TEST(TauTracker, StaticNeverMoves) {
  TauTracker t(StaticTau{0.7});
  EXPECT_EQ(t.estimate(), 0.7);
  const std::vector<double> batch{5.0, 9.0};
  EXPECT_EQ(t.update(batch), 0.7);
  EXPECT_EQ(t.update(batch), 0.7);
  EXPECT_EQ(t.observation_count(), 2u);
}

TEST(TauTracker, EmaSeedsWithFirstBatchMean) {
  TauTracker t(RunningEmaTau{0.9});
  EXPECT_FALSE(t.initialized());
  const std::vector<double> first{1.0, 3.0};
  EXPECT_EQ(t.update(first), 2.0);
  EXPECT_TRUE(t.initialized());
  const std::vector<double> second{4.0};
  // Hand-applied recurrence: 0.9 * 2.0 + 0.1 * 4.0.
  EXPECT_NEAR(t.update(second), 2.2, 1e-15);
  EXPECT_EQ(t.observation_count(), 2u);
}

TEST(TauTracker, BatchMean) {
  TauTracker t(BatchMeanTau{});
  const std::vector<double> a{1.0, 2.0, 6.0};
  EXPECT_EQ(t.update(a), 3.0);
  const std::vector<double> b{10.0};
  EXPECT_EQ(t.update(b), 10.0);
}

TEST(TauTracker, EmptyOrNonFiniteBatchThrows) {
  TauTracker t;
  EXPECT_THROW(t.update({}), DataError);
  const std::vector<double> bad{1.0, NAN};
  EXPECT_THROW(t.update(bad), DataError);
  EXPECT_EQ(t.observation_count(), 0u);
}

TEST(TauTracker, StaysWithinObservedBatchMeans) {
  Rng rng(11);
  for (TauMode mode : {TauMode{RunningEmaTau{0.9}}, TauMode{RunningEmaTau{0.5}},
                       TauMode{BatchMeanTau{}}}) {
    TauTracker t(mode);
    double lo = 1e300, hi = -1e300;
    for (int step = 0; step < 200; ++step) {
      std::vector<double> batch(1 + rng.below(8));
      for (double& l : batch) l = rng.uniform(0.0, 5.0);
      double mean = 0.0;
      for (double l : batch) mean += l;
      mean /= static_cast<double>(batch.size());
      lo = std::min(lo, mean);
      hi = std::max(hi, mean);
      const double tau = t.update(batch);
      ASSERT_GE(tau, lo - 1e-12);
      ASSERT_LE(tau, hi + 1e-12);
    }
  }
}

TEST(TauTracker, ConstantStreamConverges) {
  TauTracker t(RunningEmaTau{0.9});
  const std::vector<double> first{40.0};
  t.update(first);
  const std::vector<double> constant{1.5, 2.5};  // mean 2
  for (int i = 0; i < 300; ++i) t.update(constant);
  EXPECT_NEAR(t.estimate(), 2.0, 1e-9);

  // From a first batch already at c, 100 updates keep it there.
  TauTracker u(RunningEmaTau{0.9});
  for (int i = 0; i < 100; ++i) u.update(constant);
  EXPECT_NEAR(u.estimate(), 2.0, 1e-9);
}

}  // namespace
}  // namespace currloss
