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

#include "currloss/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "currloss/errors.hpp"
#include "currloss/random.hpp"
#include "oracles.hpp"

namespace currloss {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("The cat."), (Tokens{"the", "cat"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("don't stop"), (Tokens{"don't", "stop"}));
  EXPECT_EQ(tokenize("  ...  \"Hello,\"\tWORLD!!  -- "), (Tokens{"hello", "world"}));
}

TEST(RougeN, HandCountedFixtures) {
  const RougeScore same = rouge_n("the cat sat", "the cat sat", 1);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.f1, 1.0);

  const RougeScore r1 = rouge_n("the cat sat", "the cat ran", 1);
  EXPECT_NEAR(r1.recall, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r1.precision, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r1.f1, 2.0 / 3.0, 1e-12);

  const RougeScore r2 = rouge_n("the cat sat", "the cat ran", 2);
  EXPECT_NEAR(r2.recall, 0.5, 1e-12);
  EXPECT_NEAR(r2.precision, 0.5, 1e-12);
}

TEST(RougeN, ClipsRepeatedNgrams) {
  // Candidate repeats "the" 4 times; reference has it twice.
  const RougeScore r = rouge_n("the the the the", "the cat the dog", 1);
  EXPECT_NEAR(r.recall, 0.5, 1e-12);
  EXPECT_NEAR(r.precision, 0.5, 1e-12);
}

TEST(RougeN, EmptySidesAndShortInputs) {
  EXPECT_EQ(rouge_n("", "the cat", 1).f1, 0.0);
  EXPECT_EQ(rouge_n("the cat", "", 1).f1, 0.0);
  EXPECT_EQ(rouge_n("cat", "cat", 2).f1, 0.0);  // no bigrams anywhere
  EXPECT_THROW(rouge_n("a", "a", 0), DomainError);
}

TEST(RougeL, Fixtures) {
  const RougeScore same = rouge_l("a b c d", "a b c d");
  EXPECT_EQ(same.f1, 1.0);
  const RougeScore r = rouge_l("the cat sat", "the cat ran");
  EXPECT_NEAR(r.recall, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.precision, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.f1, 2.0 / 3.0, 1e-12);
  const RougeScore none = rouge_l("alpha beta", "gamma delta");
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_EQ(rouge_l("x", "").f1, 0.0);
}

TEST(RougeProperties, RandomTokenSequences) {
  Rng rng(21);
  const Tokens vocab{"a", "b", "c", "d", "e", "f"};
  auto draw = [&](std::size_t max_len) {
    Tokens t(rng.below(max_len + 1));
    for (auto& w : t) w = vocab[rng.below(vocab.size())];
    return t;
  };
  for (int i = 0; i < 500; ++i) {
    const Tokens a = draw(12), b = draw(12);
    const std::size_t lcs = lcs_length(a, b);
    EXPECT_EQ(lcs, testing::reference_lcs(a, b));
    // Every LCS element is a matched unigram.
    EXPECT_LE(lcs, clipped_ngram_overlap(a, b, 1));
    for (const RougeScore& s : {rouge_n(a, b, 1), rouge_n(a, b, 2), rouge_l(a, b)}) {
      for (double v : {s.recall, s.precision, s.f1}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    if (!a.empty()) {
      EXPECT_EQ(rouge_n(a, a, 1).f1, 1.0);
      EXPECT_EQ(rouge_l(a, a).f1, 1.0);
      EXPECT_EQ(rouge_l(a, Tokens{}).f1, 0.0);
    }
  }
}

TEST(RelativeImprovement, TableOneArithmetic) {
  EXPECT_NEAR(relative_improvement(30.16, 29.13), 3.5359, 1e-4);
  EXPECT_EQ(std::round(relative_improvement(30.16, 29.13) * 10) / 10, 3.5);
  EXPECT_EQ(std::round(relative_improvement(86.32, 85.01) * 10) / 10, 1.5);
  // Recomputed from the rounded table scores.
  EXPECT_EQ(std::round(relative_improvement(8.82, 7.98) * 10) / 10, 10.5);
  EXPECT_EQ(std::round(relative_improvement(21.24, 20.27) * 10) / 10, 4.8);
  EXPECT_EQ(relative_improvement(12.5, 12.5), 0.0);
  EXPECT_THROW(relative_improvement(1.0, 0.0), DomainError);
  EXPECT_THROW(relative_improvement(1.0, -3.0), DomainError);
}

TEST(OracleExtract, ExactSentenceIsPickedFirst) {
  const std::vector<std::string> doc{"the weather was cold", "i went to the store",
                                     "we bought some bread"};
  const OracleSelection sel = oracle_extract(doc, "I went to the store.", 3);
  ASSERT_FALSE(sel.indices.empty());
  EXPECT_EQ(sel.indices.front(), 1u);
  EXPECT_EQ(sel.score.f1, 1.0);
  EXPECT_EQ(sel.indices.size(), 1u);  // nothing improves on 1.0
}

TEST(OracleExtract, MaxOneReturnsBestSingleSentence) {
  const std::vector<std::string> doc{"a b", "a b c d", "c d e"};
  const OracleSelection sel = oracle_extract(doc, "a b c d e", 1);
  ASSERT_EQ(sel.indices.size(), 1u);
  EXPECT_EQ(sel.indices[0], 1u);
}

TEST(OracleExtract, TiesGoToLowestIndex) {
  const std::vector<std::string> doc{"x y", "p q", "x y"};
  const OracleSelection sel = oracle_extract(doc, "x y z", 1);
  ASSERT_EQ(sel.indices.size(), 1u);
  EXPECT_EQ(sel.indices[0], 0u);
}

TEST(OracleExtract, FourSentenceDocumentMatchesExhaustiveSearch) {
  const std::vector<std::string> doc{
      "the storm closed every road", "schools stayed open anyway",
      "the city closed schools on monday", "roads reopened by tuesday"};
  const std::string ref = "the storm closed roads and schools on monday";
  std::vector<Tokens> sentences;
  for (const auto& s : doc) sentences.push_back(tokenize(s));
  for (std::size_t k = 1; k <= 4; ++k) {
    const OracleSelection sel = oracle_extract(doc, ref, k);
    EXPECT_NEAR(sel.score.f1,
                testing::exhaustive_oracle_f1(sentences, tokenize(ref), k), 1e-12)
        << "max_sentences " << k;
  }
}

TEST(OracleExtract, GreedyCanStopBelowExhaustiveBest) {
  // {3} scores 4/11; every pair containing it scores less, so greedy stops,
  // while {0, 2} reaches 8/19.
  const std::vector<std::string> doc{
      "school we open closed the storm storm",
      "storm went the storm monday road storm monday",
      "home rain school school late", "school road stayed late"};
  const std::string ref = "school storm road home a school went";
  const OracleSelection sel = oracle_extract(doc, ref, 3);
  EXPECT_EQ(sel.indices, std::vector<std::size_t>{3});
  EXPECT_NEAR(sel.score.f1, 4.0 / 11.0, 1e-12);
  std::vector<Tokens> sentences;
  for (const auto& s : doc) sentences.push_back(tokenize(s));
  EXPECT_NEAR(testing::exhaustive_oracle_f1(sentences, tokenize(ref), 3), 8.0 / 19.0, 1e-12);
}

TEST(OracleExtract, ContractErrors) {
  EXPECT_THROW(oracle_extract({}, "ref", 2), DataError);
  const std::vector<std::string> doc{"a"};
  EXPECT_THROW(oracle_extract(doc, "a", 0), DomainError);
}

}  // namespace
}  // namespace currloss
