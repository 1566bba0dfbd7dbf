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

#include "currloss/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "currloss/errors.hpp"
#include "currloss/random.hpp"
#include "currloss/tau_tracker.hpp"

namespace currloss {
namespace {

constexpr std::uint64_t kInitStream = 101;
constexpr std::uint64_t kShuffleStream = 102;

struct WeightAccumulator {
  double sum_all = 0.0, sum_clean = 0.0, sum_corrupted = 0.0;
  std::size_t n_all = 0, n_clean = 0, n_corrupted = 0;

  void add(double w, bool corrupted) {
    sum_all += w;
    ++n_all;
    if (corrupted) {
      sum_corrupted += w;
      ++n_corrupted;
    } else {
      sum_clean += w;
      ++n_clean;
    }
  }

  WeightSplit split() const {
    WeightSplit s;
    s.mean_all = n_all ? sum_all / static_cast<double>(n_all) : 1.0;
    if (n_clean) s.mean_clean = sum_clean / static_cast<double>(n_clean);
    if (n_corrupted) {
      s.mean_corrupted = sum_corrupted / static_cast<double>(n_corrupted);
    }
    return s;
  }
};

// Steps (1-based) after which validation runs.
std::set<std::uint64_t> eval_steps(const TrainConfig& config,
                                   std::size_t steps_per_epoch) {
  std::set<std::uint64_t> steps;
  const std::size_t count = config.eval_count();
  const double total = static_cast<double>(config.epochs * steps_per_epoch);
  for (std::size_t k = 1; k <= count; ++k) {
    double at = static_cast<double>(k) * config.eval_interval_epochs *
                static_cast<double>(steps_per_epoch);
    at = std::clamp(std::round(at), 1.0, total);
    steps.insert(static_cast<std::uint64_t>(at));
  }
  return steps;
}

}  // namespace

std::string_view to_string(TrainMode mode) {
  return mode == TrainMode::Curriculum ? "curriculum" : "baseline";
}

std::string_view to_string(CheckpointMetric metric) {
  return metric == CheckpointMetric::ValAccuracy ? "val_accuracy" : "val_loss";
}

TrainMode parse_train_mode(std::string_view name) {
  if (name == "curriculum") return TrainMode::Curriculum;
  if (name == "baseline") return TrainMode::Baseline;
  throw ConfigError("mode: unknown mode '" + std::string(name) +
                    "' (expected curriculum or baseline)");
}

CheckpointMetric parse_checkpoint_metric(std::string_view name) {
  if (name == "val_accuracy") return CheckpointMetric::ValAccuracy;
  if (name == "val_loss") return CheckpointMetric::ValLoss;
  throw ConfigError("checkpoint_metric: unknown metric '" + std::string(name) +
                    "' (expected val_accuracy or val_loss)");
}

std::size_t TrainConfig::eval_count() const {
  if (epochs == 0) return 0;
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(epochs) / eval_interval_epochs));
}

void TrainConfig::validate(std::size_t n_train) const {
  model.validate();
  superloss.validate();
  optimizer.validate();
  if (loss != model.natural_loss()) {
    throw ConfigError("loss: " + std::string(to_string(loss)) +
                      " cannot be used with a " +
                      std::string(to_string(model.kind)) + " model");
  }
  if (batch_size == 0) throw ConfigError("batch_size must be > 0");
  if (n_train > 0 && batch_size > n_train) {
    throw ConfigError("batch_size " + std::to_string(batch_size) +
                      " exceeds the " + std::to_string(n_train) +
                      " training samples");
  }
  if (!(eval_interval_epochs > 0.0) || !std::isfinite(eval_interval_epochs)) {
    throw ConfigError("eval_interval_epochs must be > 0");
  }
  if (epochs > 0) {
    const double ratio = static_cast<double>(epochs) / eval_interval_epochs;
    if (std::fabs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
      throw ConfigError(
          "eval_interval_epochs must divide epochs into whole intervals");
    }
  }
  if (checkpoint_metric == CheckpointMetric::ValAccuracy &&
      !model.is_classifier()) {
    throw ConfigError("checkpoint_metric val_accuracy needs a classifier");
  }
}

bool metric_improves(CheckpointMetric metric, double candidate, double best) {
  return metric == CheckpointMetric::ValAccuracy ? candidate > best
                                                 : candidate < best;
}

double evaluate(const ParamVector& params, std::span<const LabeledSample> data,
                CheckpointMetric metric, LossKind loss) {
  if (data.empty()) throw DataError("evaluate: empty dataset");
  double total = 0.0;
  for (const auto& s : data) {
    if (metric == CheckpointMetric::ValAccuracy) {
      total += static_cast<double>(predict_class(params, s.features)) == s.label
                   ? 1.0
                   : 0.0;
    } else {
      total += per_sample_loss(forward(params, s.features), s.label, loss);
    }
  }
  return total / static_cast<double>(data.size());
}

ParamVector initial_params(const TrainConfig& config) {
  Rng rng(derive_seed(config.seed, kInitStream));
  return init_params(config.model, rng);
}

TrainResult train(const TrainConfig& config,
                  std::span<const LabeledSample> train_data,
                  std::span<const LabeledSample> val_data) {
  config.validate(train_data.size());
  TrainResult result;
  ParamVector params = initial_params(config);
  result.best_params = params;
  result.final_params = params;
  if (config.epochs == 0) return result;
  if (train_data.empty()) throw DataError("train: empty training set");
  if (val_data.empty()) throw DataError("train: empty validation set");

  const std::size_t n = train_data.size();
  const std::size_t bs = config.batch_size;
  const std::size_t steps_per_epoch = (n + bs - 1) / bs;
  const auto evals = eval_steps(config, steps_per_epoch);
  const std::size_t dim = params.values.size();
  const bool curriculum = config.mode == TrainMode::Curriculum;

  Rng shuffle_rng(derive_seed(config.seed, kShuffleStream));
  TauTracker tau(config.superloss.tau_mode);
  AdamWState state(dim);

  std::vector<std::size_t> order(n);
  std::vector<double> losses(bs);
  std::vector<double> weights(bs);
  std::vector<double> sample_grads(bs * dim);
  std::vector<double> grad(dim);
  std::uint64_t step = 0;
  result.log.reserve(config.epochs * steps_per_epoch);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.shuffle(std::span<std::size_t>(order));
    WeightAccumulator epoch_weights;

    for (std::size_t start = 0; start < n; start += bs) {
      const std::size_t count = std::min(bs, n - start);
      ++step;

      double loss_sum = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const LabeledSample& s = train_data[order[start + i]];
        losses[i] = loss_and_gradient(
            params, s, config.loss,
            std::span<double>(sample_grads).subspan(i * dim, dim));
        loss_sum += losses[i];
      }
      const double mean_loss = loss_sum / static_cast<double>(count);
      if (!std::isfinite(mean_loss) || mean_loss > kDivergenceThreshold) {
        throw DivergenceError("training diverged at step " +
                              std::to_string(step) + ": mean task loss " +
                              std::to_string(mean_loss));
      }

      const std::span<const double> batch_losses(losses.data(), count);
      const double current_tau = tau.update(batch_losses);

      WeightAccumulator step_weights;
      for (std::size_t i = 0; i < count; ++i) {
        double w = 1.0;
        if (curriculum && !config.pin_weights_to_one) {
          w = loss_weight(losses[i], current_tau, config.superloss.lambda);
        }
        weights[i] = w;
        const bool corrupted = train_data[order[start + i]].is_corrupted;
        step_weights.add(w, corrupted);
        epoch_weights.add(w, corrupted);
      }

      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = 0; i < count; ++i) {
        const double* g = sample_grads.data() + i * dim;
        for (std::size_t k = 0; k < dim; ++k) grad[k] += weights[i] * g[k];
      }
      const double scale = 1.0 / static_cast<double>(count);
      for (double& g : grad) g *= scale;
      adamw_step(params.values, grad, state, config.optimizer);

      TrainLogRecord rec;
      rec.step = step;
      rec.epoch_fraction =
          static_cast<double>(step) / static_cast<double>(steps_per_epoch);
      rec.mean_task_loss = mean_loss;
      rec.tau = current_tau;
      const WeightSplit split = step_weights.split();
      rec.mean_weight = split.mean_all;
      rec.mean_weight_clean = split.mean_clean;
      rec.mean_weight_corrupted = split.mean_corrupted;

      if (evals.contains(step)) {
        const double metric =
            evaluate(params, val_data, config.checkpoint_metric, config.loss);
        rec.eval_metric = metric;
        if (!result.best_metric ||
            metric_improves(config.checkpoint_metric, metric,
                            *result.best_metric)) {
          result.best_metric = metric;
          result.best_step = step;
          result.best_params = params;
        }
      }
      result.log.push_back(rec);
    }
    if (epoch + 1 == config.epochs) {
      result.final_epoch_weights = epoch_weights.split();
    }
  }
  result.final_params = params;
  return result;
}

}  // namespace currloss
