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

#include <filesystem>
#include <string>
#include <string_view>

namespace currloss::cli {

// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

// Whole file as a string. Throws ConfigError when the file is missing.
std::string read_file(const std::filesystem::path& path);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// UTC timestamp, e.g. 2026-10-19T18:01:02Z.
std::string utc_timestamp();

}  // namespace currloss::cli
