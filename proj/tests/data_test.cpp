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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "currloss/errors.hpp"
#include "io.hpp"

namespace currloss {
namespace {

DatasetSpec small_spec(double noise, std::uint64_t seed = 1) {
  DatasetSpec s;
  s.n_train = 100;
  s.n_val = 40;
  s.dim = 3;
  s.noise_rate = noise;
  s.seed = seed;
  return s;
}

TEST(Generate, CleanDataHasNoCorruption) {
  const Dataset d = generate(small_spec(0.0));
  for (const auto& s : d.train) EXPECT_FALSE(s.is_corrupted);
  EXPECT_EQ(d.train.size(), 100u);
  EXPECT_EQ(d.val.size(), 40u);
}

TEST(Generate, ExactCorruptionCount) {
  for (auto task : {TaskKind::TwoGaussianClassification, TaskKind::LinearRegression}) {
    DatasetSpec spec = small_spec(0.3);
    spec.task = task;
    const Dataset d = generate(spec);
    std::size_t n = 0;
    for (const auto& s : d.train) n += s.is_corrupted;
    EXPECT_EQ(n, 30u);
    for (const auto& s : d.val) EXPECT_FALSE(s.is_corrupted);
  }
  DatasetSpec odd = small_spec(0.125);
  odd.n_train = 12;  // 1.5 rounds away from zero
  std::size_t n = 0;
  for (const auto& s : generate(odd).train) n += s.is_corrupted;
  EXPECT_EQ(n, 2u);
}

TEST(Generate, CorruptionFlagMatchesLabelChange) {
  for (auto task : {TaskKind::TwoGaussianClassification, TaskKind::LinearRegression}) {
    DatasetSpec spec = small_spec(0.4, 9);
    spec.task = task;
    const Dataset d = generate(spec);
    ASSERT_EQ(d.clean_train_labels.size(), d.train.size());
    for (std::size_t i = 0; i < d.train.size(); ++i) {
      EXPECT_EQ(d.train[i].is_corrupted, d.train[i].label != d.clean_train_labels[i]);
    }
  }
}

TEST(Generate, ClassMeansSitAtHalfSeparation) {
  DatasetSpec spec;
  spec.n_train = 20000;
  spec.n_val = 1;
  spec.dim = 2;
  spec.class_separation = 3.0;
  const Dataset d = generate(spec);
  double sum[2] = {0, 0};
  double count[2] = {0, 0};
  for (const auto& s : d.train) {
    const int c = static_cast<int>(s.label);
    sum[c] += s.features[0];
    count[c] += 1;
  }
  EXPECT_NEAR(sum[0] / count[0], -1.5, 0.05);
  EXPECT_NEAR(sum[1] / count[1], 1.5, 0.05);
  EXPECT_NEAR(count[0] / 20000.0, 0.5, 0.02);
}

TEST(Generate, Deterministic) {
  const DatasetSpec spec = small_spec(0.2, 5);
  EXPECT_EQ(to_jsonl(generate(spec).train), to_jsonl(generate(spec).train));
  EXPECT_NE(to_jsonl(generate(spec).train), to_jsonl(generate(small_spec(0.2, 6)).train));
}

TEST(Generate, GoldenChecksumSeed42) {
  DatasetSpec spec;
  spec.n_train = 50;
  spec.n_val = 20;
  spec.dim = 2;
  spec.noise_rate = 0.2;
  spec.seed = 42;
  const Dataset d = generate(spec);
  EXPECT_EQ(cli::sha256_hex(to_jsonl(d.train) + to_jsonl(d.val)), 
            "8b0038751623512a5890046804b727b66e34b067b3ca66490e928aebad7f7389");
}

TEST(Generate, InvalidSpecNamesField) {
  DatasetSpec spec = small_spec(1.5);
  try {
    generate(spec);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("noise_rate"), std::string::npos);
  }
  spec = small_spec(0.0);
  spec.dim = 0;
  EXPECT_THROW(generate(spec), ConfigError);
}

TEST(Jsonl, EmptyInput) {
  std::istringstream in("");
  EXPECT_TRUE(parse_jsonl(in).empty());
}

TEST(Jsonl, SingleRecordDefaultsFlag) {
  std::istringstream in("{\"features\":[1,2],\"label\":0}\n");
  const auto v = parse_jsonl(in);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].features, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(v[0].label, 0.0);
  EXPECT_FALSE(v[0].is_corrupted);
}

TEST(Jsonl, ErrorsNameTheLine) {
  std::istringstream dims(
      "{\"features\":[1,2],\"label\":0}\n{\"features\":[1],\"label\":1}\n");
  try {
    parse_jsonl(dims, "x.jsonl");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("x.jsonl:2"), std::string::npos) << e.what();
  }
  std::istringstream garbage("{\"features\":[1],\"label\":0}\n\n{oops\n");
  try {
    parse_jsonl(garbage, "y.jsonl");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("y.jsonl:3"), std::string::npos) << e.what();
  }
}

TEST(Jsonl, RoundTripPreservesBits) {
  DatasetSpec spec = small_spec(0.3, 77);
  spec.task = TaskKind::LinearRegression;
  const Dataset d = generate(spec);
  const std::string text = to_jsonl(d.train);
  ASSERT_EQ(text.back(), '\n');
  std::istringstream in(text);
  const auto back = parse_jsonl(in);
  ASSERT_EQ(back.size(), d.train.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].features, d.train[i].features);
    EXPECT_EQ(back[i].label, d.train[i].label);
    EXPECT_EQ(back[i].is_corrupted, d.train[i].is_corrupted);
  }
}

TEST(Jsonl, LoadMissingFileThrows) {
  EXPECT_THROW(load_jsonl("/nonexistent/file.jsonl"), DataError);
}

}  // namespace
}  // namespace currloss
