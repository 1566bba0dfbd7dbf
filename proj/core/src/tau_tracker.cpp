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
#include <type_traits>

#include "currloss/errors.hpp"

namespace currloss {

TauTracker::TauTracker(TauMode mode) : mode_(mode) {
  if (const auto* fixed = std::get_if<StaticTau>(&mode_)) {
    estimate_ = fixed->value;
    initialized_ = true;
  }
}

double TauTracker::update(std::span<const double> batch_losses) {
  if (batch_losses.empty()) {
    throw DataError("tau_update: empty batch");
  }
  double sum = 0.0;
  for (double l : batch_losses) {
    if (!std::isfinite(l)) throw DataError("tau_update: non-finite loss");
    sum += l;
  }
  const double batch_mean = sum / static_cast<double>(batch_losses.size());

  std::visit(
      [&](const auto& m) {
        using Mode = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<Mode, BatchMeanTau>) {
          estimate_ = batch_mean;
        } else if constexpr (std::is_same_v<Mode, RunningEmaTau>) {
          estimate_ = initialized_
                          ? m.momentum * estimate_ + (1.0 - m.momentum) * batch_mean
                          : batch_mean;
        }
      },
      mode_);
  initialized_ = true;
  ++observations_;
  return estimate_;
}

}  // namespace currloss
