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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "currloss/metrics.hpp"
#include "currloss/random.hpp"

namespace {

std::vector<std::string> random_tokens(currloss::Rng& rng, std::size_t n) {
  std::vector<std::string> out(n);
  for (auto& t : out) t = "w" + std::to_string(rng.below(50));
  return out;
}

void BM_RougeL(benchmark::State& state) {
  currloss::Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_tokens(rng, n);
  const auto b = random_tokens(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(currloss::rouge_l(a, b));
}
BENCHMARK(BM_RougeL)->Arg(30)->Arg(300);

void BM_Rouge2(benchmark::State& state) {
  currloss::Rng rng(4);
  const auto a = random_tokens(rng, 300);
  const auto b = random_tokens(rng, 300);
  for (auto _ : state) benchmark::DoNotOptimize(currloss::rouge_n(a, b, 2));
}
BENCHMARK(BM_Rouge2);

}  // namespace
