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

#include "currloss/compare.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "currloss/errors.hpp"
#include "currloss/metrics.hpp"

namespace currloss {
namespace {

RunSummary summarize(const TrainResult& r, const std::vector<TrainLogRecord>& log) {
  RunSummary s;
  s.best_val_metric = r.best_metric.value_or(0.0);
  s.best_step = r.best_step.value_or(0);
  if (r.best_step) {
    s.best_epoch_fraction = log.at(*r.best_step - 1).epoch_fraction;
  }
  s.final_epoch_weights = r.final_epoch_weights;
  return s;
}

}  // namespace

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

ComparisonReport compare(const TrainConfig& config, const DatasetSpec& dataset,
                         std::span<const std::uint64_t> seeds,
                         std::size_t max_threads) {
  if (seeds.empty()) throw ConfigError("compare: at least one seed is required");
  dataset.validate();
  config.validate(dataset.n_train);

  ComparisonReport report;
  report.metric = config.checkpoint_metric;
  report.dataset = dataset;
  report.config = config;
  report.per_seed.resize(seeds.size());

  // Job 2i is seed i curriculum, 2i + 1 is seed i baseline. Each job
  // regenerates its data; generation is cheap and keeps jobs independent.
  const std::size_t jobs = 2 * seeds.size();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        const std::size_t i = job / 2;
        DatasetSpec spec = dataset;
        spec.seed = seeds[i];
        const Dataset data = generate(spec);
        TrainConfig run = config;
        run.seed = seeds[i];
        run.mode = job % 2 == 0 ? TrainMode::Curriculum : TrainMode::Baseline;
        const TrainResult r = train(run, data.train, data.val);
        SeedComparison& slot = report.per_seed[i];
        slot.seed = seeds[i];
        (job % 2 == 0 ? slot.curriculum : slot.baseline) = summarize(r, r.log);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(max_threads, jobs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> cur, base, clean, corrupted;
  for (auto& s : report.per_seed) {
    cur.push_back(s.curriculum.best_val_metric);
    base.push_back(s.baseline.best_val_metric);
    if (metric_improves(report.metric, s.curriculum.best_val_metric,
                        s.baseline.best_val_metric)) {
      s.outcome = 1;
      ++report.curriculum_wins;
    } else if (metric_improves(report.metric, s.baseline.best_val_metric,
                               s.curriculum.best_val_metric)) {
      s.outcome = -1;
      ++report.baseline_wins;
    } else {
      ++report.ties;
    }
    const auto& w = s.curriculum.final_epoch_weights;
    if (w.mean_clean) clean.push_back(*w.mean_clean);
    if (w.mean_corrupted) corrupted.push_back(*w.mean_corrupted);
  }
  report.curriculum_metric = mean_std(cur);
  report.baseline_metric = mean_std(base);
  report.mean_gap = report.curriculum_metric.mean - report.baseline_metric.mean;
  if (report.baseline_metric.mean > 0.0) {
    report.relative_improvement_percent = relative_improvement(
        report.curriculum_metric.mean, report.baseline_metric.mean);
  }
  if (!clean.empty()) report.mean_weight_clean = mean_std(clean).mean;
  if (!corrupted.empty()) report.mean_weight_corrupted = mean_std(corrupted).mean;
  return report;
}

}  // namespace currloss
