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

#include "currloss/optimizer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "currloss/errors.hpp"

namespace currloss {

AdamWHyper AdamWHyper::finetune_preset() {
  return AdamWHyper{3e-5, 0.9, 0.98, 1e-8, 0.01};
}

void AdamWHyper::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("optimizer.learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0))
    throw ConfigError("optimizer.beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0))
    throw ConfigError("optimizer.beta2 must lie in [0, 1)");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ConfigError("optimizer.epsilon must be > 0");
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay))
    throw ConfigError("optimizer.weight_decay must be >= 0");
}

void adamw_step(std::span<double> params, std::span<const double> grads,
                AdamWState& state, const AdamWHyper& hyper) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.first_moment.size() != n ||
      state.second_moment.size() != n) {
    throw DataError("adamw_step: shape mismatch (params " + std::to_string(n) +
                    ", grads " + std::to_string(grads.size()) + ", state " +
                    std::to_string(state.first_moment.size()) + ")");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw DataError("adamw_step: non-finite gradient");
  }
  if (state.step_count == std::numeric_limits<std::uint64_t>::max()) {
    throw DataError("adamw_step: step counter overflow");
  }

  const std::uint64_t t = ++state.step_count;
  const double bias1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(t));
  const double bias2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(t));
  const double lr = hyper.learning_rate;
  const double decay = lr * hyper.weight_decay;

  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = hyper.beta1 * m + (1.0 - hyper.beta1) * g;
    v = hyper.beta2 * v + (1.0 - hyper.beta2) * g * g;
    const double m_hat = m / bias1;
    const double v_hat = v / bias2;
    const double p = params[i];
    params[i] = p - lr * m_hat / (std::sqrt(v_hat) + hyper.epsilon) - decay * p;
  }
}

}  // namespace currloss
