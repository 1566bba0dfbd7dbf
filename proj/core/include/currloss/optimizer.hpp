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
#include <vector>

namespace currloss {

struct AdamWHyper {
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.98;
  double epsilon = 1e-8;
  double weight_decay = 0.01;

  // lr 3e-5, betas (0.9, 0.98), weight decay 0.01: the summarization
  // fine-tuning recipe. Far too small a step for the toy models.
  static AdamWHyper finetune_preset();

  // Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const AdamWHyper&) const = default;
};

struct AdamWState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t step_count = 0;

  explicit AdamWState(std::size_t size = 0)
      : first_moment(size, 0.0), second_moment(size, 0.0) {}
};

// One AdamW update, in place:
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   p <- p - lr * m_hat / (sqrt(v_hat) + eps) - lr * wd * p
// with bias-corrected m_hat, v_hat. Decay is applied to the pre-step
// parameters and covers every entry, biases included.
//
// Throws DataError on a shape mismatch or a non-finite gradient; in that
// case neither params nor state are modified.
void adamw_step(std::span<double> params, std::span<const double> grads,
                AdamWState& state, const AdamWHyper& hyper);

}  // namespace currloss
