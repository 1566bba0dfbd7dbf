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

#include "currloss/data.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "currloss/errors.hpp"
#include "currloss/random.hpp"

namespace currloss {
namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kCorruptionStream = 2;

LabeledSample gaussian_sample(const DatasetSpec& spec, Rng& rng) {
  LabeledSample s;
  const bool positive = rng.below(2) == 1;
  s.label = positive ? 1.0 : 0.0;
  s.features.resize(spec.dim);
  for (double& x : s.features) x = rng.normal();
  s.features[0] += (positive ? 0.5 : -0.5) * spec.class_separation;
  return s;
}

LabeledSample regression_sample(const DatasetSpec& spec,
                                const std::vector<double>& truth, Rng& rng) {
  LabeledSample s;
  s.features.resize(spec.dim);
  double y = 0.0;
  for (std::size_t i = 0; i < spec.dim; ++i) {
    s.features[i] = rng.normal();
    y += truth[i] * s.features[i];
  }
  s.label = y + spec.noise_sigma * rng.normal();
  return s;
}

bool is_integral_label(double v) {
  return v == std::floor(v) && std::fabs(v) < 9007199254740992.0;
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  return kind == TaskKind::TwoGaussianClassification ? "two_gaussian"
                                                     : "linear_regression";
}

TaskKind parse_task_kind(std::string_view name) {
  if (name == "two_gaussian") return TaskKind::TwoGaussianClassification;
  if (name == "linear_regression") return TaskKind::LinearRegression;
  throw ConfigError("dataset.task: unknown task '" + std::string(name) +
                    "' (expected two_gaussian or linear_regression)");
}

void DatasetSpec::validate() const {
  if (n_train == 0) throw ConfigError("dataset.n_train must be > 0");
  if (n_val == 0) throw ConfigError("dataset.n_val must be > 0");
  if (dim == 0) throw ConfigError("dataset.dim must be > 0");
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) {
    throw ConfigError("dataset.noise_rate must lie in [0, 1), got " +
                      std::to_string(noise_rate));
  }
  if (task == TaskKind::TwoGaussianClassification &&
      !(class_separation > 0.0 && std::isfinite(class_separation))) {
    throw ConfigError("dataset.class_separation must be > 0");
  }
  if (task == TaskKind::LinearRegression &&
      !(noise_sigma > 0.0 && std::isfinite(noise_sigma))) {
    throw ConfigError("dataset.noise_sigma must be > 0");
  }
}

std::size_t DatasetSpec::corrupted_count() const {
  return static_cast<std::size_t>(
      std::llround(noise_rate * static_cast<double>(n_train)));
}

Dataset generate(const DatasetSpec& spec) {
  spec.validate();
  Dataset out;
  Rng rng(derive_seed(spec.seed, kSampleStream));

  std::vector<double> truth;
  if (spec.task == TaskKind::LinearRegression) {
    truth.resize(spec.dim);
    for (double& w : truth) w = rng.normal();
  }
  auto draw = [&] {
    return spec.task == TaskKind::TwoGaussianClassification
               ? gaussian_sample(spec, rng)
               : regression_sample(spec, truth, rng);
  };
  out.train.reserve(spec.n_train);
  for (std::size_t i = 0; i < spec.n_train; ++i) out.train.push_back(draw());
  out.val.reserve(spec.n_val);
  for (std::size_t i = 0; i < spec.n_val; ++i) out.val.push_back(draw());

  out.clean_train_labels.reserve(spec.n_train);
  for (const auto& s : out.train) out.clean_train_labels.push_back(s.label);

  // Partial Fisher-Yates picks exactly k distinct victims.
  Rng pick(derive_seed(spec.seed, kCorruptionStream));
  std::vector<std::size_t> order(spec.n_train);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t k = spec.corrupted_count();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(pick.below(spec.n_train - i));
    std::swap(order[i], order[j]);
    LabeledSample& victim = out.train[order[i]];
    victim.is_corrupted = true;
    if (spec.task == TaskKind::TwoGaussianClassification) {
      victim.label = 1.0 - victim.label;
    } else {
      const double sign = pick.below(2) == 0 ? -1.0 : 1.0;
      victim.label += sign * pick.uniform(10.0, 20.0);
    }
  }
  return out;
}

std::vector<LabeledSample> parse_jsonl(std::istream& in,
                                       std::string_view source) {
  std::vector<LabeledSample> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> DataError {
    return DataError(std::string(source) + ":" + std::to_string(line_no) +
                     ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw fail("record is not a JSON object");
    const auto features = j.find("features");
    if (features == j.end() || !features->is_array()) {
      throw fail("missing \"features\" array");
    }
    const auto label = j.find("label");
    if (label == j.end() || !label->is_number()) {
      throw fail("missing numeric \"label\"");
    }
    LabeledSample s;
    s.features.reserve(features->size());
    for (const auto& v : *features) {
      if (!v.is_number()) throw fail("non-numeric feature value");
      s.features.push_back(v.get<double>());
    }
    s.label = label->get<double>();
    if (const auto flag = j.find("is_corrupted"); flag != j.end()) {
      if (!flag->is_boolean()) throw fail("\"is_corrupted\" must be boolean");
      s.is_corrupted = flag->get<bool>();
    }
    if (!out.empty() && s.features.size() != out.front().features.size()) {
      throw fail("feature dimension " + std::to_string(s.features.size()) +
                 " differs from first record's " +
                 std::to_string(out.front().features.size()));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSample> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_jsonl(in, path.string());
}

std::string to_jsonl(std::span<const LabeledSample> samples) {
  std::string out;
  for (const auto& s : samples) {
    nlohmann::ordered_json j;
    j["features"] = s.features;
    if (is_integral_label(s.label)) {
      j["label"] = static_cast<std::int64_t>(s.label);
    } else {
      j["label"] = s.label;
    }
    j["is_corrupted"] = s.is_corrupted;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace currloss
