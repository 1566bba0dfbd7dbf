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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "currloss/errors.hpp"

namespace currloss {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }

std::map<std::string, std::size_t> ngram_counts(
    std::span<const std::string> tokens, std::size_t n) {
  std::map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t ngram_total(std::span<const std::string> tokens, std::size_t n) {
  return tokens.size() >= n ? tokens.size() - n + 1 : 0;
}

double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::string> join_in_document_order(
    std::vector<std::size_t> indices,
    const std::vector<std::vector<std::string>>& sentences) {
  std::sort(indices.begin(), indices.end());
  std::vector<std::string> out;
  for (std::size_t i : indices) {
    out.insert(out.end(), sentences[i].begin(), sentences[i].end());
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_punct(text[b])) ++b;
    while (e > b && is_punct(text[e - 1])) --e;
    if (b < e) {
      std::string tok(text.substr(b, e - b));
      for (char& c : tok) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      tokens.push_back(std::move(tok));
    }
    i = j;
  }
  return tokens;
}

std::size_t clipped_ngram_overlap(std::span<const std::string> candidate,
                                  std::span<const std::string> reference,
                                  std::size_t n) {
  if (n == 0) throw DomainError("rouge_n: n must be >= 1");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : ref) {
    if (const auto it = cand.find(gram); it != cand.end()) {
      overlap += std::min(count, it->second);
    }
  }
  return overlap;
}

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore make_rouge_score(double recall, double precision) {
  RougeScore s{recall, precision, 0.0};
  if (recall + precision > 0.0) {
    s.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return s;
}

RougeScore rouge_n(std::span<const std::string> candidate,
                   std::span<const std::string> reference, std::size_t n) {
  const std::size_t overlap = clipped_ngram_overlap(candidate, reference, n);
  return make_rouge_score(safe_ratio(overlap, ngram_total(reference, n)),
                          safe_ratio(overlap, ngram_total(candidate, n)));
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                   std::size_t n) {
  return rouge_n(tokenize(candidate), tokenize(reference), n);
}

RougeScore rouge_l(std::span<const std::string> candidate,
                   std::span<const std::string> reference) {
  const std::size_t l = lcs_length(candidate, reference);
  return make_rouge_score(safe_ratio(l, reference.size()),
                          safe_ratio(l, candidate.size()));
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l(tokenize(candidate), tokenize(reference));
}

double relative_improvement(double new_score, double old_score) {
  if (!(old_score > 0.0) || !std::isfinite(old_score) ||
      !std::isfinite(new_score)) {
    throw DomainError("relative_improvement: old score must be finite and > 0");
  }
  return 100.0 * (new_score - old_score) / old_score;
}

OracleSelection oracle_extract(std::span<const std::string> document_sentences,
                               std::string_view reference,
                               std::size_t max_sentences) {
  if (document_sentences.empty()) {
    throw DataError("oracle_extract: empty document");
  }
  if (max_sentences == 0) {
    throw DomainError("oracle_extract: max_sentences must be >= 1");
  }
  std::vector<std::vector<std::string>> sentences;
  sentences.reserve(document_sentences.size());
  for (const auto& s : document_sentences) sentences.push_back(tokenize(s));
  const auto ref = tokenize(reference);

  OracleSelection out;
  std::vector<bool> taken(sentences.size(), false);
  while (out.indices.size() < std::min(max_sentences, sentences.size())) {
    std::optional<std::size_t> best;
    RougeScore best_score;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (taken[i]) continue;
      auto trial = out.indices;
      trial.push_back(i);
      const RougeScore s = rouge_l(join_in_document_order(trial, sentences), ref);
      if (!best || s.f1 > best_score.f1) {
        best = i;
        best_score = s;
      }
    }
    if (!best || !(best_score.f1 > out.score.f1)) break;
    taken[*best] = true;
    out.indices.push_back(*best);
    out.score = best_score;
  }
  return out;
}

}  // namespace currloss
