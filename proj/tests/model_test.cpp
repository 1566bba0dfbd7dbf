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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "currloss/errors.hpp"
#include "currloss/random.hpp"
#include "oracles.hpp"

namespace currloss {
namespace {

ModelShape random_shape(ModelKind kind, Rng& rng) {
  ModelShape s;
  s.kind = kind;
  s.input_dim = 1 + rng.below(4);
  s.num_classes = 2 + rng.below(3);
  s.hidden_dim = kind == ModelKind::Mlp ? 1 + rng.below(5) : 0;
  return s;
}

LabeledSample random_sample(const ModelShape& s, Rng& rng) {
  LabeledSample x;
  x.features.resize(s.input_dim);
  for (double& f : x.features) f = rng.normal();
  x.label = s.is_classifier() ? static_cast<double>(rng.below(s.num_classes))
                              : 2.0 * rng.normal();
  return x;
}

// Max coordinate-wise error of the analytic gradient against central
// differences of the loss, with a unit floor on the relative scale.
double gradient_check_error(const ParamVector& params, const LabeledSample& x) {
  const LossKind kind = params.shape.natural_loss();
  const auto analytic = per_sample_gradient(params, x, kind);
  double worst = 0.0;
  for (std::size_t k = 0; k < params.values.size(); ++k) {
    const double numeric = testing::central_difference(
        [&](double v) {
          ParamVector p = params;
          p.values[k] = v;
          return per_sample_loss(forward(p, x.features), x.label, kind);
        },
        params.values[k], 1e-6);
    worst = std::max(worst, testing::unit_floor_relative_error(analytic[k], numeric));
  }
  return worst;
}

class GradientCheck : public ::testing::TestWithParam<ModelKind> {};

TEST_P(GradientCheck, HundredSeededConfigurations) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed * 7919 + static_cast<std::uint64_t>(GetParam()));
    const ModelShape shape = random_shape(GetParam(), rng);
    ParamVector params = zero_params(shape);
    for (double& v : params.values) v = rng.normal();
    const LabeledSample x = random_sample(shape, rng);
    ASSERT_LE(gradient_check_error(params, x), 1e-5) << "seed " << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(AllModels, GradientCheck,
                         ::testing::Values(ModelKind::Linear, ModelKind::Logistic,
                                           ModelKind::Mlp));

TEST(Forward, LogisticZeroParamsIsUniform) {
  const ModelShape s{ModelKind::Logistic, 3, 4, 0};
  const auto p = forward(zero_params(s), std::vector<double>{1.0, -2.0, 5.0});
  ASSERT_EQ(p.size(), 4u);
  for (double v : p) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Forward, LinearIdentityWeights) {
  ParamVector p = zero_params({ModelKind::Linear, 2, 1, 0});
  p.values = {1.0, 0.0, 0.0};
  const auto y = forward(p, std::vector<double>{3.0, 7.0});
  ASSERT_EQ(y.size(), 1u);
  EXPECT_EQ(y[0], 3.0);
}

TEST(Forward, MlpGoldenValue) {
  // Frozen from the first run: seed-0 init, fixed input.
  const ModelShape s{ModelKind::Mlp, 3, 2, 4};
  Rng rng(0);
  const ParamVector p = init_params(s, rng);
  const auto probs = forward(p, std::vector<double>{0.5, -1.0, 2.0});
  ASSERT_EQ(probs.size(), 2u);
  EXPECT_NEAR(probs[0], 0.62597620968048695, 1e-15);
  EXPECT_NEAR(probs[0] + probs[1], 1.0, 1e-15);
}

TEST(Forward, SoftmaxNormalizedAndPositive) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const ModelShape s = random_shape(i % 2 ? ModelKind::Mlp : ModelKind::Logistic, rng);
    ParamVector p = zero_params(s);
    for (double& v : p.values) v = 4.0 * rng.normal();
    const auto probs = forward(p, random_sample(s, rng).features);
    EXPECT_NEAR(std::accumulate(probs.begin(), probs.end(), 0.0), 1.0, 1e-9);
    for (double v : probs) EXPECT_GT(v, 0.0);
  }
}

TEST(Forward, DimensionMismatchThrows) {
  const ParamVector p = zero_params({ModelKind::Logistic, 2, 2, 0});
  EXPECT_THROW(forward(p, std::vector<double>{1.0}), DataError);
  ParamVector broken = p;
  broken.values.pop_back();
  EXPECT_THROW(forward(broken, std::vector<double>{1.0, 2.0}), DataError);
}

TEST(InitParams, WithinFanInBounds) {
  const ModelShape s{ModelKind::Mlp, 9, 3, 16};
  Rng rng(3);
  const ParamVector p = init_params(s, rng);
  const std::size_t first = 16 * 10;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    const double bound = i < first ? 1.0 / 3.0 : 0.25;
    EXPECT_LE(std::fabs(p.values[i]), bound);
  }
}

TEST(PerSampleLoss, Examples) {
  const std::vector<double> certain{1.0, 0.0};
  EXPECT_LE(per_sample_loss(certain, 0.0, LossKind::CrossEntropy), 1e-9);
  // The 1e-12 floor keeps the wrong-class loss finite.
  EXPECT_NEAR(per_sample_loss(certain, 1.0, LossKind::CrossEntropy),
              -std::log(1e-12), 1e-9);
  const std::vector<double> uniform{0.5, 0.5};
  EXPECT_NEAR(per_sample_loss(uniform, 1.0, LossKind::CrossEntropy), std::log(2.0), 1e-15);
  const std::vector<double> pred{2.0};
  EXPECT_EQ(per_sample_loss(pred, 0.5, LossKind::Mse), 2.25);
}

TEST(PerSampleLoss, InvalidPairingsThrow) {
  const std::vector<double> scalar{2.0};
  const std::vector<double> probs{0.3, 0.7};
  EXPECT_THROW(per_sample_loss(scalar, 0.0, LossKind::CrossEntropy), DomainError);
  EXPECT_THROW(per_sample_loss(probs, 0.5, LossKind::Mse), DomainError);
  EXPECT_THROW(per_sample_loss(probs, 2.0, LossKind::CrossEntropy), DomainError);
  EXPECT_THROW(per_sample_loss(probs, 0.5, LossKind::CrossEntropy), DomainError);
  const ParamVector lin = zero_params({ModelKind::Linear, 1, 1, 0});
  LabeledSample x{{1.0}, 0.0, false};
  EXPECT_THROW(per_sample_gradient(lin, x, LossKind::CrossEntropy), DomainError);
}

TEST(PerSampleLoss, NonNegative) {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto kind = static_cast<ModelKind>(i % 3);
    const ModelShape s = random_shape(kind, rng);
    ParamVector p = zero_params(s);
    for (double& v : p.values) v = 3.0 * rng.normal();
    const LabeledSample x = random_sample(s, rng);
    EXPECT_GE(per_sample_loss(forward(p, x.features), x.label, s.natural_loss()), 0.0);
  }
}

TEST(PerSampleGradient, StationaryAtOptimum) {
  // MSE linear model hitting the target exactly.
  ParamVector lin = zero_params({ModelKind::Linear, 2, 1, 0});
  lin.values = {1.0, -1.0, 0.5};
  const LabeledSample hit{{2.0, 1.0}, 1.5, false};
  for (double g : per_sample_gradient(lin, hit, LossKind::Mse)) EXPECT_EQ(g, 0.0);

  // Logistic regression on one separable point: the margin only grows
  // logarithmically, so the gradient norm decays roughly like 1/t.
  ParamVector logit = zero_params({ModelKind::Logistic, 1, 2, 0});
  const LabeledSample point{{1.0}, 1.0, false};
  auto grad_norm = [&] {
    double norm = 0.0;
    for (double g : per_sample_gradient(logit, point, LossKind::CrossEntropy)) norm += g * g;
    return std::sqrt(norm);
  };
  double at_2000 = 0.0;
  for (int i = 0; i < 20000; ++i) {
    if (i == 2000) at_2000 = grad_norm();
    const auto g = per_sample_gradient(logit, point, LossKind::CrossEntropy);
    for (std::size_t k = 0; k < g.size(); ++k) logit.values[k] -= 5.0 * g[k];
  }
  EXPECT_LE(grad_norm(), 1e-4);
  EXPECT_LT(grad_norm(), at_2000 / 5.0);
}

}  // namespace
}  // namespace currloss
