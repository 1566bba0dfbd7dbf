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

#include "currloss/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "currloss/errors.hpp"
#include "currloss/random.hpp"

namespace currloss {
namespace {

constexpr double kProbabilityFloor = 1e-12;

void softmax_in_place(std::span<double> z) {
  const double top = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : z) v /= total;
}

// y = W x + b for a row-major (rows x cols) block at `w` followed by `rows`
// biases.
void affine(std::span<const double> w, std::span<const double> b,
            std::span<const double> x, std::span<double> y) {
  const std::size_t cols = x.size();
  for (std::size_t r = 0; r < y.size(); ++r) {
    double acc = b[r];
    const double* row = w.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void check_features(const ModelShape& shape, std::span<const double> x,
                    std::size_t param_size) {
  if (x.size() != shape.input_dim) {
    throw DataError("feature dimension " + std::to_string(x.size()) +
                    " does not match model input dim " +
                    std::to_string(shape.input_dim));
  }
  if (param_size != shape.parameter_count()) {
    throw DataError("parameter vector has " + std::to_string(param_size) +
                    " entries, shape expects " +
                    std::to_string(shape.parameter_count()));
  }
}

std::size_t class_index(double label, std::size_t num_classes) {
  if (!(label >= 0.0) || label != std::floor(label) ||
      label >= static_cast<double>(num_classes)) {
    throw DomainError("label " + std::to_string(label) +
                      " is not a class index below " +
                      std::to_string(num_classes));
  }
  return static_cast<std::size_t>(label);
}

// dL/dlogits for cross-entropy over softmax probabilities (in place).
// When the floor on p[label] is active the loss is locally constant.
double cross_entropy_logit_grad(std::span<double> probs, std::size_t label) {
  const double p = probs[label];
  const double loss = -std::log(std::max(p, kProbabilityFloor));
  if (p < kProbabilityFloor) {
    std::fill(probs.begin(), probs.end(), 0.0);
  } else {
    probs[label] -= 1.0;
  }
  return loss;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Logistic: return "logistic";
    case ModelKind::Mlp: return "mlp";
  }
  return "unknown";
}

std::string_view to_string(LossKind kind) {
  return kind == LossKind::CrossEntropy ? "cross_entropy" : "mse";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "linear") return ModelKind::Linear;
  if (name == "logistic") return ModelKind::Logistic;
  if (name == "mlp") return ModelKind::Mlp;
  throw ConfigError("model.kind: unknown model '" + std::string(name) +
                    "' (expected linear, logistic or mlp)");
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "cross_entropy") return LossKind::CrossEntropy;
  if (name == "mse") return LossKind::Mse;
  throw ConfigError("loss: unknown loss '" + std::string(name) +
                    "' (expected cross_entropy or mse)");
}

std::size_t ModelShape::parameter_count() const {
  switch (kind) {
    case ModelKind::Linear: return input_dim + 1;
    case ModelKind::Logistic: return num_classes * (input_dim + 1);
    case ModelKind::Mlp:
      return hidden_dim * (input_dim + 1) + num_classes * (hidden_dim + 1);
  }
  return 0;
}

std::size_t ModelShape::output_dim() const {
  return kind == ModelKind::Linear ? 1 : num_classes;
}

LossKind ModelShape::natural_loss() const {
  return kind == ModelKind::Linear ? LossKind::Mse : LossKind::CrossEntropy;
}

void ModelShape::validate() const {
  if (input_dim == 0) throw ConfigError("model.input_dim must be > 0");
  if (is_classifier() && num_classes < 2) {
    throw ConfigError("model.num_classes must be >= 2");
  }
  if (kind == ModelKind::Mlp && hidden_dim == 0) {
    throw ConfigError("model.hidden_dim must be > 0 for an mlp");
  }
}

ParamVector zero_params(const ModelShape& shape) {
  shape.validate();
  return {shape, std::vector<double>(shape.parameter_count(), 0.0)};
}

ParamVector init_params(const ModelShape& shape, Rng& rng) {
  ParamVector p = zero_params(shape);
  auto fill = [&](std::size_t begin, std::size_t count, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t i = begin; i < begin + count; ++i) {
      p.values[i] = rng.uniform(-bound, bound);
    }
  };
  const std::size_t d = shape.input_dim;
  switch (shape.kind) {
    case ModelKind::Linear:
    case ModelKind::Logistic:
      fill(0, p.values.size(), d);
      break;
    case ModelKind::Mlp: {
      const std::size_t first = shape.hidden_dim * (d + 1);
      fill(0, first, d);
      fill(first, p.values.size() - first, shape.hidden_dim);
      break;
    }
  }
  return p;
}

std::vector<double> forward(const ParamVector& params,
                            std::span<const double> features) {
  const ModelShape& s = params.shape;
  check_features(s, features, params.values.size());
  std::span<const double> theta(params.values);
  const std::size_t d = s.input_dim;

  switch (s.kind) {
    case ModelKind::Linear: {
      std::vector<double> y(1);
      affine(theta.first(d), theta.subspan(d, 1), features, y);
      return y;
    }
    case ModelKind::Logistic: {
      const std::size_t c = s.num_classes;
      std::vector<double> z(c);
      affine(theta.first(c * d), theta.subspan(c * d, c), features, z);
      softmax_in_place(z);
      return z;
    }
    case ModelKind::Mlp: {
      const std::size_t h = s.hidden_dim;
      const std::size_t c = s.num_classes;
      std::vector<double> hidden(h);
      affine(theta.first(h * d), theta.subspan(h * d, h), features, hidden);
      for (double& v : hidden) v = std::tanh(v);
      const auto second = theta.subspan(h * (d + 1));
      std::vector<double> z(c);
      affine(second.first(c * h), second.subspan(c * h, c), hidden, z);
      softmax_in_place(z);
      return z;
    }
  }
  return {};
}

double per_sample_loss(std::span<const double> prediction, double label,
                       LossKind kind) {
  if (kind == LossKind::CrossEntropy) {
    if (prediction.size() < 2) {
      throw DomainError(
          "cross_entropy needs a probability vector over >= 2 classes");
    }
    const std::size_t y = class_index(label, prediction.size());
    return -std::log(std::max(prediction[y], kProbabilityFloor));
  }
  if (prediction.size() != 1) {
    throw DomainError("mse needs a single real prediction, got " +
                      std::to_string(prediction.size()) + " outputs");
  }
  if (!std::isfinite(label)) throw DomainError("mse target is not finite");
  const double r = prediction[0] - label;
  return r * r;
}

double loss_and_gradient(const ParamVector& params, const LabeledSample& sample,
                         LossKind kind, std::span<double> grad_out) {
  const ModelShape& s = params.shape;
  check_features(s, sample.features, params.values.size());
  if (grad_out.size() != params.values.size()) {
    throw DataError("gradient buffer size mismatch");
  }
  if (kind != s.natural_loss()) {
    throw DomainError(std::string(to_string(kind)) +
                      " loss cannot be paired with a " +
                      std::string(to_string(s.kind)) + " model");
  }
  std::span<const double> theta(params.values);
  std::span<const double> x(sample.features);
  const std::size_t d = s.input_dim;

  switch (s.kind) {
    case ModelKind::Linear: {
      double y = theta[d];
      for (std::size_t i = 0; i < d; ++i) y += theta[i] * x[i];
      const double pred[1] = {y};
      const double loss = per_sample_loss(pred, sample.label, kind);
      const double g = 2.0 * (y - sample.label);
      for (std::size_t i = 0; i < d; ++i) grad_out[i] = g * x[i];
      grad_out[d] = g;
      return loss;
    }
    case ModelKind::Logistic: {
      const std::size_t c = s.num_classes;
      const std::size_t y = class_index(sample.label, c);
      std::vector<double> dz(c);
      affine(theta.first(c * d), theta.subspan(c * d, c), x, dz);
      softmax_in_place(dz);
      const double loss = cross_entropy_logit_grad(dz, y);
      for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t i = 0; i < d; ++i) grad_out[k * d + i] = dz[k] * x[i];
        grad_out[c * d + k] = dz[k];
      }
      return loss;
    }
    case ModelKind::Mlp: {
      const std::size_t h = s.hidden_dim;
      const std::size_t c = s.num_classes;
      const std::size_t y = class_index(sample.label, c);
      std::vector<double> a(h);
      affine(theta.first(h * d), theta.subspan(h * d, h), x, a);
      for (double& v : a) v = std::tanh(v);
      const std::size_t off2 = h * (d + 1);
      const auto w2 = theta.subspan(off2, c * h);
      std::vector<double> dz(c);
      affine(w2, theta.subspan(off2 + c * h, c), a, dz);
      softmax_in_place(dz);
      const double loss = cross_entropy_logit_grad(dz, y);

      std::vector<double> da(h, 0.0);
      for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t j = 0; j < h; ++j) {
          grad_out[off2 + k * h + j] = dz[k] * a[j];
          da[j] += w2[k * h + j] * dz[k];
        }
        grad_out[off2 + c * h + k] = dz[k];
      }
      for (std::size_t j = 0; j < h; ++j) {
        const double dpre = da[j] * (1.0 - a[j] * a[j]);
        for (std::size_t i = 0; i < d; ++i) grad_out[j * d + i] = dpre * x[i];
        grad_out[h * d + j] = dpre;
      }
      return loss;
    }
  }
  return 0.0;
}

std::vector<double> per_sample_gradient(const ParamVector& params,
                                        const LabeledSample& sample,
                                        LossKind kind) {
  std::vector<double> grad(params.values.size());
  loss_and_gradient(params, sample, kind, grad);
  return grad;
}

std::size_t predict_class(const ParamVector& params,
                          std::span<const double> features) {
  const auto probs = forward(params, features);
  return static_cast<std::size_t>(
      std::max_element(probs.begin(), probs.end()) - probs.begin());
}

}  // namespace currloss
