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
#include <iosfwd>
#include <string>
#include <vector>

namespace currloss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsageError = 2;

// Entry point shared by main() and the tests. args[0] is the program name.
// Human-readable summaries go to `out`, diagnostics to `err`; machine
// artifacts are only ever written under --out-dir.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Worker cap for `compare`: CURRLOSS_THREADS if set to a positive integer,
// otherwise the hardware concurrency (at least 1).
std::size_t compare_threads_from_env();

// CSV rows (loss, beta, sigma_star, superloss_value, clamped) for
// loss = lo, lo + step, ..., up to hi inclusive. Header row, ',' delimiter,
// '.' decimal point, '\n' line endings, shortest round-trip numbers.
std::string sigma_table_csv(double lambda, double tau, double lo, double hi,
                            double step);

// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace currloss::cli
