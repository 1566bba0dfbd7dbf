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
#include <vector>

#include "currloss/data.hpp"
#include "currloss/trainer.hpp"

namespace currloss {

struct RunSummary {
  double best_val_metric = 0.0;
  std::uint64_t best_step = 0;
  double best_epoch_fraction = 0.0;
  WeightSplit final_epoch_weights;
};

struct SeedComparison {
  std::uint64_t seed = 0;
  RunSummary curriculum;
  RunSummary baseline;
  // +1 curriculum better, -1 baseline better, 0 tie (by best val metric).
  int outcome = 0;
};

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single seed
};

struct ComparisonReport {
  CheckpointMetric metric = CheckpointMetric::ValAccuracy;
  DatasetSpec dataset;   // seed field is overridden per run
  TrainConfig config;    // mode and seed fields are overridden per run
  std::vector<SeedComparison> per_seed;

  MeanStd curriculum_metric;
  MeanStd baseline_metric;
  // curriculum mean - baseline mean, in the metric's units.
  double mean_gap = 0.0;
  // 100 * (curriculum - baseline) / baseline on the means, when baseline > 0.
  std::optional<double> relative_improvement_percent;
  // Curriculum final-epoch weights averaged over seeds.
  std::optional<double> mean_weight_clean;
  std::optional<double> mean_weight_corrupted;
  std::size_t curriculum_wins = 0;
  std::size_t baseline_wins = 0;
  std::size_t ties = 0;
};

MeanStd mean_std(std::span<const double> values);

// For each seed: generate data from `dataset` with that seed, then train
// Curriculum and Baseline on it from identical initial parameters (both
// runs use the same config seed). Runs are independent and may execute on
// up to `max_threads` threads; results are merged in seed order, so the
// report does not depend on the thread count.
ComparisonReport compare(const TrainConfig& config, const DatasetSpec& dataset,
                         std::span<const std::uint64_t> seeds,
                         std::size_t max_threads = 1);

}  // namespace currloss
