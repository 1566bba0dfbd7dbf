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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "currloss/model.hpp"

namespace currloss {

enum class TaskKind { TwoGaussianClassification, LinearRegression };

std::string_view to_string(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);

// Synthetic dataset description.
//
// TwoGaussianClassification: labels are fair coin flips; class 0 is centred
// at -(s/2) e1 and class 1 at +(s/2) e1 with identity covariance,
// s = class_separation. Corruption flips the label.
//
// LinearRegression: a ground-truth weight vector w ~ N(0, I) and bias 0;
// x ~ N(0, I), y = w.x + noise_sigma * N(0, 1). Corruption adds an outlier
// offset of random sign and magnitude in [10, 20).
//
// Exactly round(noise_rate * n_train) training samples are corrupted; the
// validation split is always clean.
struct DatasetSpec {
  TaskKind task = TaskKind::TwoGaussianClassification;
  std::size_t n_train = 2000;
  std::size_t n_val = 500;
  std::size_t dim = 2;
  double noise_rate = 0.0;
  double class_separation = 2.0;
  double noise_sigma = 0.1;
  std::uint64_t seed = 0;

  // Throws ConfigError naming the offending field.
  void validate() const;
  std::size_t corrupted_count() const;
};

struct Dataset {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> val;
  // Labels before corruption, parallel to train.
  std::vector<double> clean_train_labels;
};

// Deterministic for a given spec; every draw goes through currloss::Rng.
Dataset generate(const DatasetSpec& spec);

// One JSON object per line:
//   {"features":[...],"label":<number>,"is_corrupted":<bool>}
// "is_corrupted" is optional on input (default false). Blank lines are
// skipped. Errors carry the 1-based line number.
std::vector<LabeledSample> parse_jsonl(std::istream& in,
                                       std::string_view source = "<stream>");
std::vector<LabeledSample> load_jsonl(const std::filesystem::path& path);

// Shortest round-trip numbers, integral labels written as integers, one
// record per line, trailing newline.
std::string to_jsonl(std::span<const LabeledSample> samples);

}  // namespace currloss
