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

#pragma once

#include <cstdint>
#include <span>

#include "currloss/superloss.hpp"

namespace currloss {

// Tracks tau, the running or static average of the task loss.
//
// Static mode never moves. BatchMean returns each batch's mean. RunningEma
// seeds itself with the first batch mean (no zero-bias correction) and
// then follows estimate <- m * estimate + (1 - m) * batch_mean.
class TauTracker {
 public:
  explicit TauTracker(TauMode mode = RunningEmaTau{});

  // Feeds one batch of raw task losses and returns the post-update tau.
  // Throws DataError on an empty batch or non-finite losses.
  double update(std::span<const double> batch_losses);

  double estimate() const noexcept { return estimate_; }
  bool initialized() const noexcept { return initialized_; }
  std::uint64_t observation_count() const noexcept { return observations_; }
  const TauMode& mode() const noexcept { return mode_; }

 private:
  TauMode mode_;
  double estimate_ = 0.0;
  bool initialized_ = false;
  std::uint64_t observations_ = 0;
};

}  // namespace currloss
