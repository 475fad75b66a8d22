// Copyright 2026 The taskorder Authors
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

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "taskorder/task_spec.hpp"

namespace taskorder::cli {

using Json = nlohmann::json;

/// Settings shared by every subcommand.
struct RunContext {
  std::uint64_t seed = 0;
  int threads = 1;
  std::filesystem::path out_dir;
  std::ostream* log = nullptr;  // human-readable summary, may be null
};

/// Fills every spec-source default so the echoed config is complete.
/// Sources: "graph" {kind, size, a}, "random" {size, lo, hi, max_tries},
/// "file" {c_in, c_out?} with paths, "inline" {c_in, c_out?} with matrices.
/// Without c_out the output similarity is uniform at rho_o (default 1).
/// Random sources record `seed` unless the config carries its own.
Json normalize_spec(const Json& spec, std::uint64_t seed);

/// Builds the spec described by a config (normalized first).
TaskSetSpec build_spec(const Json& spec, std::uint64_t seed);

/// Reads a JSON document. Throws ParseError with the file name on failure.
Json read_json(const std::filesystem::path& path);

/// Typed lookup with a default; throws ParseError when the key holds the
/// wrong type.
template <typename T>
T get_or(const Json& obj, const char* key, const T& fallback);

/// Adds `key` with `value` when it is missing.
void set_default(Json& obj, const char* key, const Json& value);

/// Shortest decimal text that parses back to the same double.
std::string short_double(double v);

}  // namespace taskorder::cli
