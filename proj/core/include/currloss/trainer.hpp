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
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "currloss/model.hpp"
#include "currloss/optimizer.hpp"
#include "currloss/superloss.hpp"

namespace currloss {

enum class TrainMode { Curriculum, Baseline };
enum class CheckpointMetric { ValAccuracy, ValLoss };

std::string_view to_string(TrainMode mode);
std::string_view to_string(CheckpointMetric metric);
TrainMode parse_train_mode(std::string_view name);
CheckpointMetric parse_checkpoint_metric(std::string_view name);

// Training loss above this (or non-finite) aborts with DivergenceError.
inline constexpr double kDivergenceThreshold = 1e6;

struct TrainConfig {
  TrainMode mode = TrainMode::Curriculum;
  std::size_t epochs = 8;
  std::size_t batch_size = 32;
  double eval_interval_epochs = 0.5;
  SuperLossConfig superloss;
  AdamWHyper optimizer;
  ModelShape model;
  LossKind loss = LossKind::CrossEntropy;
  std::uint64_t seed = 0;
  CheckpointMetric checkpoint_metric = CheckpointMetric::ValAccuracy;
  // Curriculum mode only: replace every sigma* by exactly 1.0 while still
  // tracking tau. Used to check that the two modes share one update path.
  bool pin_weights_to_one = false;

  // Throws ConfigError naming the offending field. n_train bounds
  // batch_size.
  void validate(std::size_t n_train) const;
  std::size_t eval_count() const;
};

struct TrainLogRecord {
  std::uint64_t step = 0;  // 1-based optimizer step
  double epoch_fraction = 0.0;
  double mean_task_loss = 0.0;
  double tau = 0.0;
  double mean_weight = 1.0;
  std::optional<double> mean_weight_clean;      // absent if no clean sample
  std::optional<double> mean_weight_corrupted;  // absent if none corrupted
  std::optional<double> eval_metric;            // eval steps only

  bool operator==(const TrainLogRecord&) const = default;
};

struct WeightSplit {
  double mean_all = 1.0;
  std::optional<double> mean_clean;
  std::optional<double> mean_corrupted;
};

struct TrainResult {
  ParamVector best_params;
  ParamVector final_params;
  std::vector<TrainLogRecord> log;
  std::optional<std::uint64_t> best_step;  // empty when no eval happened
  std::optional<double> best_metric;
  // Mean applied weight over every sample visited in the last epoch.
  WeightSplit final_epoch_weights;
};

// Higher accuracy is better; lower loss is better.
bool metric_improves(CheckpointMetric metric, double candidate, double best);

// Accuracy (classifiers only) or mean task loss over `data`.
double evaluate(const ParamVector& params, std::span<const LabeledSample> data,
                CheckpointMetric metric, LossKind loss);

// Initial parameters for a config: init_params seeded from config.seed.
ParamVector initial_params(const TrainConfig& config);

// Mini-batch training. Per step: seeded per-epoch shuffle, per-sample task
// losses, tau update from the raw losses, sigma* weights (Curriculum) or 1
// (Baseline), gradient sum_i w_i g_i / batch_size, one AdamW step. Every
// eval_interval_epochs the model is scored on `val`; the parameters from the
// best-scoring eval point (earliest on ties) are returned.
TrainResult train(const TrainConfig& config,
                  std::span<const LabeledSample> train_data,
                  std::span<const LabeledSample> val_data);

}  // namespace currloss
