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
#include <string_view>
#include <vector>

namespace currloss {

class Rng;

enum class ModelKind { Linear, Logistic, Mlp };
enum class LossKind { CrossEntropy, Mse };

std::string_view to_string(ModelKind kind);
std::string_view to_string(LossKind kind);
ModelKind parse_model_kind(std::string_view name);
LossKind parse_loss_kind(std::string_view name);

// Layer dimensions of a toy model.
//
// Flat parameter layouts (row-major weights):
//   Linear:   [w (input_dim), b]                         -> 1 real output
//   Logistic: [W (classes x input), b (classes)]         -> softmax
//   Mlp:      [W1 (hidden x input), b1 (hidden),
//              W2 (classes x hidden), b2 (classes)]      -> tanh, softmax
struct ModelShape {
  ModelKind kind = ModelKind::Logistic;
  std::size_t input_dim = 1;
  std::size_t num_classes = 2;  // ignored for Linear
  std::size_t hidden_dim = 0;   // Mlp only

  std::size_t parameter_count() const;
  std::size_t output_dim() const;
  bool is_classifier() const { return kind != ModelKind::Linear; }
  // The only loss each model is paired with: Mse for Linear, CrossEntropy
  // for the softmax models.
  LossKind natural_loss() const;
  // Throws ConfigError on zero dims, <2 classes, or an Mlp without hidden
  // units.
  void validate() const;

  bool operator==(const ModelShape&) const = default;
};

struct ParamVector {
  ModelShape shape;
  std::vector<double> values;
};

struct LabeledSample {
  std::vector<double> features;
  double label = 0.0;  // class index for classification, target otherwise
  bool is_corrupted = false;
};

ParamVector zero_params(const ModelShape& shape);

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] for every weight and bias of
// a layer, drawn in layout order.
ParamVector init_params(const ModelShape& shape, Rng& rng);

// Model output: one real for Linear, class probabilities otherwise.
// Throws DataError on dimension mismatch.
std::vector<double> forward(const ParamVector& params,
                            std::span<const double> features);

// CrossEntropy: -log(max(prediction[label], 1e-12)).
// Mse:          (prediction[0] - label)^2.
// Throws DomainError for a kind/prediction/label mismatch.
double per_sample_loss(std::span<const double> prediction, double label,
                       LossKind kind);

// Exact gradient of per_sample_loss(forward(params, x), y) w.r.t. params.
std::vector<double> per_sample_gradient(const ParamVector& params,
                                        const LabeledSample& sample,
                                        LossKind kind);

// Fused forward + loss + gradient. grad_out must have parameter_count()
// entries and is overwritten. Returns the loss.
double loss_and_gradient(const ParamVector& params, const LabeledSample& sample,
                         LossKind kind, std::span<double> grad_out);

// Predicted class (argmax of probabilities) for classifiers.
std::size_t predict_class(const ParamVector& params,
                          std::span<const double> features);

}  // namespace currloss
