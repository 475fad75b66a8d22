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

#include <filesystem>
#include <string>
#include <vector>

#include "taskorder/task_spec.hpp"
#include "taskorder_cli/config.hpp"

namespace taskorder::cli::detail {

/// Rows are pre-rendered fields; joined with commas, LF terminated.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(std::vector<std::string> fields);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::size_t width_;
  std::string text_;
};

std::string join_row(const std::vector<std::string>& fields);

/// Writes c_in.csv and c_out.csv next to the other payload files.
void write_spec(const TaskSetSpec& spec, const RunContext& ctx);
Json spec_summary(const TaskSetSpec& spec);

std::ostream& log(const RunContext& ctx);

/// "3>1>2" becomes "3-1-2" for use in file names.
std::string file_token(const Ordering& ord);

}  // namespace taskorder::cli::detail
