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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "taskorder/correlation.hpp"
#include "taskorder/ensemble.hpp"
#include "taskorder/order_opt.hpp"
#include "taskorder/similarity.hpp"

namespace taskorder {

/// Square matrix as CSV: header task_1..task_P, then P rows, 17 significant digits.
std::string matrix_to_csv(const Matrix& m);
/// Inverse of matrix_to_csv. Throws ParseError or ShapeMismatch.
Matrix matrix_from_csv(std::string_view text);

/// {"size": P, "entries": [[...]]}
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// Reads a correlation matrix from a .csv or .json file and validates it.
CorrelationMatrix read_correlation(const std::filesystem::path& path);

nlohmann::json to_json(const RankedOrders& ranked);
nlohmann::json to_json(const RuleReport& report);
nlohmann::json to_json(const ExtremalPath& path);
/// Clamping flags, raw values and directional asymmetry of an estimate.
nlohmann::json flags_to_json(const SimilarityMatrix& s);

struct TraceRow {
  std::optional<std::uint64_t> seed;
  int stage = 0;  // 0 is the untrained state
  int task = 1;   // 1-based
  double error = 0.0;
};

/// One row per (stage, task) of a training run.
std::vector<TraceRow> trace_rows(const StudentState& state, std::optional<std::uint64_t> seed = {});
/// Columns stage,task,error, with a leading seed column when any row has one.
std::string traces_to_csv(const std::vector<TraceRow>& rows);
std::vector<TraceRow> traces_from_csv(std::string_view text);

std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
/// Writes with LF line endings, creating parent directories.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace taskorder
