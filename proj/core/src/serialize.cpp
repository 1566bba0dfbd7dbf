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

#include "currloss/serialize.hpp"

#include <string>
#include <type_traits>

#include "currloss/errors.hpp"

namespace currloss {
namespace {

std::string join_path(const std::string& prefix, const char* key) {
  return prefix.empty() ? key : prefix + "." + key;
}

template <typename T>
void read(const Json& j, const char* key, const std::string& prefix, T& out) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) {
        throw ConfigError(join_path(prefix, key) + " must be true or false");
      }
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_integer() || (it->is_number_integer() &&
                                       !it->is_number_unsigned() &&
                                       it->template get<long long>() < 0)) {
        throw ConfigError(join_path(prefix, key) +
                          " must be a non-negative integer");
      }
    }
    out = it->template get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(join_path(prefix, key) + ": " + e.what());
  }
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError((path.empty() ? std::string("config") : path) +
                      " must be a JSON object");
  }
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> optional_double(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

Json to_json(const WeightSplit& w) {
  Json j;
  j["mean_all"] = w.mean_all;
  j["mean_clean"] = optional_json(w.mean_clean);
  j["mean_corrupted"] = optional_json(w.mean_corrupted);
  return j;
}

WeightSplit weight_split_from_json(const Json& j) {
  WeightSplit w;
  w.mean_all = j.at("mean_all").get<double>();
  w.mean_clean = optional_double(j, "mean_clean");
  w.mean_corrupted = optional_double(j, "mean_corrupted");
  return w;
}

Json to_json(const RunSummary& r) {
  Json j;
  j["best_val_metric"] = r.best_val_metric;
  j["best_step"] = r.best_step;
  j["best_epoch_fraction"] = r.best_epoch_fraction;
  j["final_epoch_weights"] = to_json(r.final_epoch_weights);
  return j;
}

RunSummary run_summary_from_json(const Json& j) {
  RunSummary r;
  r.best_val_metric = j.at("best_val_metric").get<double>();
  r.best_step = j.at("best_step").get<std::uint64_t>();
  r.best_epoch_fraction = j.at("best_epoch_fraction").get<double>();
  r.final_epoch_weights = weight_split_from_json(j.at("final_epoch_weights"));
  return r;
}

Json to_json(const MeanStd& m) { return Json{{"mean", m.mean}, {"std", m.stddev}}; }

MeanStd mean_std_from_json(const Json& j) {
  return {j.at("mean").get<double>(), j.at("std").get<double>()};
}

}  // namespace

Json to_json(const DatasetSpec& spec) {
  Json j;
  j["task"] = std::string(to_string(spec.task));
  j["n_train"] = spec.n_train;
  j["n_val"] = spec.n_val;
  j["dim"] = spec.dim;
  j["noise_rate"] = spec.noise_rate;
  j["class_separation"] = spec.class_separation;
  j["noise_sigma"] = spec.noise_sigma;
  j["seed"] = spec.seed;
  return j;
}

DatasetSpec dataset_spec_from_json(const Json& j) {
  const std::string p = "dataset";
  require_object(j, p);
  DatasetSpec spec;
  std::string task(to_string(spec.task));
  read(j, "task", p, task);
  spec.task = parse_task_kind(task);
  read(j, "n_train", p, spec.n_train);
  read(j, "n_val", p, spec.n_val);
  read(j, "dim", p, spec.dim);
  read(j, "noise_rate", p, spec.noise_rate);
  read(j, "class_separation", p, spec.class_separation);
  read(j, "noise_sigma", p, spec.noise_sigma);
  read(j, "seed", p, spec.seed);
  spec.validate();
  return spec;
}

Json to_json(const SuperLossConfig& config) {
  Json tau;
  std::visit(
      [&](const auto& m) {
        using Mode = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<Mode, StaticTau>) {
          tau["mode"] = "static";
          tau["value"] = m.value;
        } else if constexpr (std::is_same_v<Mode, RunningEmaTau>) {
          tau["mode"] = "ema";
          tau["momentum"] = m.momentum;
        } else {
          tau["mode"] = "batch_mean";
        }
      },
      config.tau_mode);
  Json j;
  j["lambda"] = config.lambda;
  j["tau"] = tau;
  return j;
}

SuperLossConfig superloss_config_from_json(const Json& j) {
  const std::string p = "superloss";
  require_object(j, p);
  SuperLossConfig config;
  read(j, "lambda", p, config.lambda);
  if (const auto it = j.find("tau"); it != j.end()) {
    const std::string tp = "superloss.tau";
    require_object(*it, tp);
    std::string mode = "ema";
    read(*it, "mode", tp, mode);
    if (mode == "static") {
      if (!it->contains("value")) {
        throw ConfigError("superloss.tau.value is required for static mode");
      }
      StaticTau s;
      read(*it, "value", tp, s.value);
      config.tau_mode = s;
    } else if (mode == "ema") {
      RunningEmaTau e;
      read(*it, "momentum", tp, e.momentum);
      config.tau_mode = e;
    } else if (mode == "batch_mean") {
      config.tau_mode = BatchMeanTau{};
    } else {
      throw ConfigError("superloss.tau.mode: unknown mode '" + mode +
                        "' (expected static, ema or batch_mean)");
    }
  }
  config.validate();
  return config;
}

Json to_json(const AdamWHyper& hyper) {
  Json j;
  j["learning_rate"] = hyper.learning_rate;
  j["beta1"] = hyper.beta1;
  j["beta2"] = hyper.beta2;
  j["epsilon"] = hyper.epsilon;
  j["weight_decay"] = hyper.weight_decay;
  return j;
}

AdamWHyper adamw_hyper_from_json(const Json& j) {
  const std::string p = "optimizer";
  require_object(j, p);
  AdamWHyper hyper;
  std::string preset = "toy";
  read(j, "preset", p, preset);
  if (preset == "finetune") {
    hyper = AdamWHyper::finetune_preset();
  } else if (preset != "toy") {
    throw ConfigError("optimizer.preset: unknown preset '" + preset +
                      "' (expected finetune or toy)");
  }
  read(j, "learning_rate", p, hyper.learning_rate);
  read(j, "beta1", p, hyper.beta1);
  read(j, "beta2", p, hyper.beta2);
  read(j, "epsilon", p, hyper.epsilon);
  read(j, "weight_decay", p, hyper.weight_decay);
  hyper.validate();
  return hyper;
}

Json to_json(const ModelShape& shape) {
  Json j;
  j["kind"] = std::string(to_string(shape.kind));
  j["input_dim"] = shape.input_dim;
  j["num_classes"] = shape.num_classes;
  j["hidden_dim"] = shape.hidden_dim;
  return j;
}

ModelShape model_shape_from_json(const Json& j) {
  const std::string p = "model";
  require_object(j, p);
  ModelShape shape;
  std::string kind(to_string(shape.kind));
  read(j, "kind", p, kind);
  shape.kind = parse_model_kind(kind);
  read(j, "input_dim", p, shape.input_dim);
  read(j, "num_classes", p, shape.num_classes);
  read(j, "hidden_dim", p, shape.hidden_dim);
  shape.validate();
  return shape;
}

Json to_json(const TrainConfig& config) {
  Json j;
  j["mode"] = std::string(to_string(config.mode));
  j["epochs"] = config.epochs;
  j["batch_size"] = config.batch_size;
  j["eval_interval_epochs"] = config.eval_interval_epochs;
  j["seed"] = config.seed;
  j["model"] = to_json(config.model);
  j["loss"] = std::string(to_string(config.loss));
  j["superloss"] = to_json(config.superloss);
  j["optimizer"] = to_json(config.optimizer);
  j["checkpoint_metric"] = std::string(to_string(config.checkpoint_metric));
  j["pin_weights_to_one"] = config.pin_weights_to_one;
  return j;
}

TrainConfig train_config_from_json(const Json& j) {
  require_object(j, "");
  TrainConfig config;
  std::string mode(to_string(config.mode));
  read(j, "mode", "", mode);
  config.mode = parse_train_mode(mode);
  read(j, "epochs", "", config.epochs);
  read(j, "batch_size", "", config.batch_size);
  read(j, "eval_interval_epochs", "", config.eval_interval_epochs);
  read(j, "seed", "", config.seed);
  if (const auto it = j.find("model"); it != j.end()) {
    config.model = model_shape_from_json(*it);
  }
  config.loss = config.model.natural_loss();
  if (j.contains("loss")) {
    std::string loss;
    read(j, "loss", "", loss);
    config.loss = parse_loss_kind(loss);
  }
  if (const auto it = j.find("superloss"); it != j.end()) {
    config.superloss = superloss_config_from_json(*it);
  }
  if (const auto it = j.find("optimizer"); it != j.end()) {
    config.optimizer = adamw_hyper_from_json(*it);
  }
  config.checkpoint_metric = config.model.is_classifier()
                                 ? CheckpointMetric::ValAccuracy
                                 : CheckpointMetric::ValLoss;
  if (j.contains("checkpoint_metric")) {
    std::string metric;
    read(j, "checkpoint_metric", "", metric);
    config.checkpoint_metric = parse_checkpoint_metric(metric);
  }
  read(j, "pin_weights_to_one", "", config.pin_weights_to_one);
  config.validate(0);
  return config;
}

Json to_json(const TrainLogRecord& r) {
  Json j;
  j["step"] = r.step;
  j["epoch_fraction"] = r.epoch_fraction;
  j["mean_task_loss"] = r.mean_task_loss;
  j["tau"] = r.tau;
  j["mean_weight"] = r.mean_weight;
  j["mean_weight_clean"] = optional_json(r.mean_weight_clean);
  j["mean_weight_corrupted"] = optional_json(r.mean_weight_corrupted);
  if (r.eval_metric) j["eval_metric"] = *r.eval_metric;
  return j;
}

TrainLogRecord train_log_record_from_json(const Json& j) {
  TrainLogRecord r;
  r.step = j.at("step").get<std::uint64_t>();
  r.epoch_fraction = j.at("epoch_fraction").get<double>();
  r.mean_task_loss = j.at("mean_task_loss").get<double>();
  r.tau = j.at("tau").get<double>();
  r.mean_weight = j.at("mean_weight").get<double>();
  r.mean_weight_clean = optional_double(j, "mean_weight_clean");
  r.mean_weight_corrupted = optional_double(j, "mean_weight_corrupted");
  r.eval_metric = optional_double(j, "eval_metric");
  return r;
}

std::string to_jsonl(std::span<const TrainLogRecord> log) {
  std::string out;
  for (const auto& r : log) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

Json to_json(const ParamVector& params) {
  Json j;
  j["shape"] = to_json(params.shape);
  j["params"] = params.values;
  return j;
}

ParamVector param_vector_from_json(const Json& j) {
  require_object(j, "checkpoint");
  if (!j.contains("shape") || !j.contains("params")) {
    throw ConfigError("checkpoint needs \"shape\" and \"params\"");
  }
  ParamVector p;
  p.shape = model_shape_from_json(j.at("shape"));
  try {
    p.values = j.at("params").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("checkpoint.params: ") + e.what());
  }
  if (p.values.size() != p.shape.parameter_count()) {
    throw ConfigError("checkpoint.params has " + std::to_string(p.values.size()) +
                      " entries, shape expects " +
                      std::to_string(p.shape.parameter_count()));
  }
  return p;
}

Json to_json(const ComparisonReport& report) {
  Json j;
  j["metric"] = std::string(to_string(report.metric));
  j["dataset"] = to_json(report.dataset);
  j["config"] = to_json(report.config);
  Json seeds = Json::array();
  for (const auto& s : report.per_seed) {
    Json e;
    e["seed"] = s.seed;
    e["curriculum"] = to_json(s.curriculum);
    e["baseline"] = to_json(s.baseline);
    e["outcome"] = s.outcome;
    seeds.push_back(e);
  }
  j["per_seed"] = seeds;
  Json summary;
  summary["curriculum"] = to_json(report.curriculum_metric);
  summary["baseline"] = to_json(report.baseline_metric);
  summary["mean_gap"] = report.mean_gap;
  summary["relative_improvement_percent"] =
      optional_json(report.relative_improvement_percent);
  summary["mean_weight_clean"] = optional_json(report.mean_weight_clean);
  summary["mean_weight_corrupted"] = optional_json(report.mean_weight_corrupted);
  summary["curriculum_wins"] = report.curriculum_wins;
  summary["baseline_wins"] = report.baseline_wins;
  summary["ties"] = report.ties;
  j["summary"] = summary;
  return j;
}

ComparisonReport comparison_report_from_json(const Json& j) {
  ComparisonReport r;
  r.metric = parse_checkpoint_metric(j.at("metric").get<std::string>());
  r.dataset = dataset_spec_from_json(j.at("dataset"));
  r.config = train_config_from_json(j.at("config"));
  for (const auto& e : j.at("per_seed")) {
    SeedComparison s;
    s.seed = e.at("seed").get<std::uint64_t>();
    s.curriculum = run_summary_from_json(e.at("curriculum"));
    s.baseline = run_summary_from_json(e.at("baseline"));
    s.outcome = e.at("outcome").get<int>();
    r.per_seed.push_back(s);
  }
  const Json& summary = j.at("summary");
  r.curriculum_metric = mean_std_from_json(summary.at("curriculum"));
  r.baseline_metric = mean_std_from_json(summary.at("baseline"));
  r.mean_gap = summary.at("mean_gap").get<double>();
  r.relative_improvement_percent =
      optional_double(summary, "relative_improvement_percent");
  r.mean_weight_clean = optional_double(summary, "mean_weight_clean");
  r.mean_weight_corrupted = optional_double(summary, "mean_weight_corrupted");
  r.curriculum_wins = summary.at("curriculum_wins").get<std::size_t>();
  r.baseline_wins = summary.at("baseline_wins").get<std::size_t>();
  r.ties = summary.at("ties").get<std::size_t>();
  return r;
}

}  // namespace currloss
