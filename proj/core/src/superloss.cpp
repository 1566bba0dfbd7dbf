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

#include "currloss/superloss.hpp"

#include <cmath>
#include <string>

#include "currloss/errors.hpp"
#include "currloss/lambert_w.hpp"

namespace currloss {

void SuperLossConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("superloss.lambda must be a finite value > 0, got " +
                      std::to_string(lambda));
  }
  if (const auto* ema = std::get_if<RunningEmaTau>(&tau_mode)) {
    if (!(ema->momentum > 0.0 && ema->momentum < 1.0)) {
      throw ConfigError("superloss.tau.momentum must lie in (0, 1), got " +
                        std::to_string(ema->momentum));
    }
  }
  if (const auto* fixed = std::get_if<StaticTau>(&tau_mode)) {
    if (!std::isfinite(fixed->value)) {
      throw ConfigError("superloss.tau.value must be finite");
    }
  }
}

double superloss_beta(double loss, double tau, double lambda) {
  if (!std::isfinite(loss) || !std::isfinite(tau) || !std::isfinite(lambda)) {
    throw DomainError("superloss: loss, tau and lambda must be finite");
  }
  if (!(lambda > 0.0)) {
    throw DomainError("superloss: lambda must be > 0, got " +
                      std::to_string(lambda));
  }
  return (loss - tau) / lambda;
}

SuperLossOutput evaluate_superloss(double loss, double tau, double lambda) {
  SuperLossOutput out;
  out.beta = superloss_beta(loss, tau, lambda);
  out.clamped = out.beta < kBetaClamp;
  if (out.clamped) {
    // W0(-1/e) == -1 exactly; skip the iteration.
    out.sigma_star = kMaxConfidence;
  } else {
    out.sigma_star = std::exp(-lambert_w0(0.5 * out.beta));
  }
  out.weight = out.sigma_star;
  const double log_sigma = std::log(out.sigma_star);
  out.value = (loss - tau) * out.sigma_star + lambda * log_sigma * log_sigma;
  return out;
}

double sigma_star(double loss, double tau, double lambda) {
  return evaluate_superloss(loss, tau, lambda).sigma_star;
}

double superloss_value(double loss, double tau, double lambda) {
  return evaluate_superloss(loss, tau, lambda).value;
}

double loss_weight(double loss, double tau, double lambda) {
  return evaluate_superloss(loss, tau, lambda).weight;
}

std::vector<SuperLossOutput> batch_superloss(std::span<const double> losses,
                                             double tau,
                                             const SuperLossConfig& config) {
  if (losses.empty()) {
    throw DataError("batch_superloss: empty batch");
  }
  std::vector<SuperLossOutput> out;
  out.reserve(losses.size());
  for (double loss : losses) {
    out.push_back(evaluate_superloss(loss, tau, config.lambda));
  }
  return out;
}

}  // namespace currloss
