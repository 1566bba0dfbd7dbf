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

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace currloss {

// Clamp threshold on beta: below -2/e the Lambert argument would leave the
// principal-branch domain, so the confidence saturates at e.
inline constexpr double kBetaClamp = -0.73575888234288467;  // -2/e
inline constexpr double kMaxConfidence = 2.718281828459045;  // e

// tau held at a fixed value for the whole run.
struct StaticTau {
  double value = 0.0;
};

// tau <- m * tau + (1 - m) * batch_mean, initialized by the first batch mean.
struct RunningEmaTau {
  double momentum = 0.9;
};

// tau = mean of the current batch.
struct BatchMeanTau {};

using TauMode = std::variant<StaticTau, RunningEmaTau, BatchMeanTau>;

struct SuperLossConfig {
  double lambda = 1.0;
  TauMode tau_mode = RunningEmaTau{};

  // Throws ConfigError if lambda <= 0 or EMA momentum is outside (0, 1).
  void validate() const;
};

struct SuperLossOutput {
  double value = 0.0;       // SL_lambda(loss)
  double sigma_star = 1.0;  // optimal confidence, in (0, e]
  double weight = 1.0;      // gradient weight; always equal to sigma_star
  double beta = 0.0;        // (loss - tau) / lambda
  bool clamped = false;     // beta < -2/e
};

// (loss - tau) / lambda. Throws DomainError on non-finite input or
// lambda <= 0.
double superloss_beta(double loss, double tau, double lambda);

// Closed-form minimizer over sigma of
//   (loss - tau) * sigma + lambda * log(sigma)^2,
// i.e. exp(-W0(max(-2/e, beta) / 2)). Equals 1 at loss == tau and e on the
// clamped region beta <= -2/e.
double sigma_star(double loss, double tau, double lambda);

// The SuperLoss itself: the objective above evaluated at sigma_star.
double superloss_value(double loss, double tau, double lambda);

// Per-sample gradient weight. By the envelope theorem
// d superloss_value / d loss == sigma_star, so scaling each sample's task
// loss gradient by this weight (treated as a constant w.r.t. parameters)
// is exact gradient descent on the SuperLoss.
double loss_weight(double loss, double tau, double lambda);

// All of the above for one sample, sharing a single beta evaluation.
SuperLossOutput evaluate_superloss(double loss, double tau, double lambda);

// Element-wise evaluation with one shared tau. Output order follows input.
// Throws DataError on an empty batch. config.tau_mode is not consulted;
// tau is supplied by the caller (see TauTracker).
std::vector<SuperLossOutput> batch_superloss(std::span<const double> losses,
                                             double tau,
                                             const SuperLossConfig& config);

}  // namespace currloss
