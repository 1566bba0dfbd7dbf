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

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "currloss/compare.hpp"
#include "currloss/data.hpp"
#include "currloss/model.hpp"
#include "currloss/optimizer.hpp"
#include "currloss/superloss.hpp"
#include "currloss/trainer.hpp"

namespace currloss {

// Insertion-ordered so emitted files have a stable, readable key order.
using Json = nlohmann::ordered_json;

// Parsers accept partial objects: missing keys keep their defaults. Type
// errors and out-of-range values throw ConfigError naming the field path
// (e.g. "superloss.tau.momentum").

Json to_json(const DatasetSpec& spec);
DatasetSpec dataset_spec_from_json(const Json& j);

// {"lambda": 1.0, "tau": {"mode": "ema", "momentum": 0.9}}
// tau modes: {"mode":"static","value":v}, {"mode":"ema","momentum":m},
// {"mode":"batch_mean"}.
Json to_json(const SuperLossConfig& config);
SuperLossConfig superloss_config_from_json(const Json& j);

// Either explicit fields or {"preset": "finetune" | "toy"} plus overrides.
Json to_json(const AdamWHyper& hyper);
AdamWHyper adamw_hyper_from_json(const Json& j);

Json to_json(const ModelShape& shape);
ModelShape model_shape_from_json(const Json& j);

Json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const Json& j);

Json to_json(const TrainLogRecord& record);
TrainLogRecord train_log_record_from_json(const Json& j);
// One record per line, trailing newline.
std::string to_jsonl(std::span<const TrainLogRecord> log);

// Checkpoint: {"shape": {...}, "params": [...]}, full-precision numbers.
Json to_json(const ParamVector& params);
ParamVector param_vector_from_json(const Json& j);

Json to_json(const ComparisonReport& report);
ComparisonReport comparison_report_from_json(const Json& j);

}  // namespace currloss
