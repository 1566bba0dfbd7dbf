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
#include <string>
#include <string_view>
#include <vector>

namespace currloss {

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Lowercases ASCII letters, splits on whitespace, strips leading and
// trailing ASCII punctuation from each token and drops empty tokens.
// Interior punctuation ("don't") is kept. No stemming, no stopwords.
std::vector<std::string> tokenize(std::string_view text);

// Sum over distinct n-grams of min(candidate count, reference count).
std::size_t clipped_ngram_overlap(std::span<const std::string> candidate,
                                  std::span<const std::string> reference,
                                  std::size_t n);

// Longest common subsequence length of two token sequences.
std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b);

// Harmonic mean, 0 when both are 0.
RougeScore make_rouge_score(double recall, double precision);

// Clipped n-gram overlap over reference n-grams (recall) and candidate
// n-grams (precision). Empty denominators give 0. Throws DomainError for
// n == 0.
RougeScore rouge_n(std::span<const std::string> candidate,
                   std::span<const std::string> reference, std::size_t n);
RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                   std::size_t n);

// Sentence-level LCS over the full token sequences.
RougeScore rouge_l(std::span<const std::string> candidate,
                   std::span<const std::string> reference);
RougeScore rouge_l(std::string_view candidate, std::string_view reference);

// 100 * (new - old) / old. Throws DomainError unless old > 0.
double relative_improvement(double new_score, double old_score);

struct OracleSelection {
  std::vector<std::size_t> indices;  // in selection order
  RougeScore score;                  // ROUGE-L of the selection
};

// Greedy extractive oracle. Repeatedly adds the sentence whose inclusion
// gives the highest ROUGE-L f1 against the reference, stopping once no
// sentence improves f1 or max_sentences are chosen. Ties go to the lowest
// index. A selection is scored with its sentences concatenated in
// document order.
//
// Throws DataError for an empty document and DomainError for
// max_sentences == 0.
OracleSelection oracle_extract(std::span<const std::string> document_sentences,
                               std::string_view reference,
                               std::size_t max_sentences);

}  // namespace currloss
