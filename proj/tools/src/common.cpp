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

#include "common.hpp"

#include <ostream>
#include <streambuf>

#include "taskorder/error.hpp"
#include "taskorder/io.hpp"

namespace taskorder::cli::detail {
namespace {

class NullBuffer : public std::streambuf {
 protected:
  int overflow(int c) override { return c; }
};

}  // namespace

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    out += fields[k];
  }
  out += '\n';
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()), text_(join_row(header)) {}

void CsvWriter::row(std::vector<std::string> fields) {
  if (fields.size() != width_) fail(ErrorKind::ShapeMismatch, "CSV row width does not match header");
  text_ += join_row(fields);
}

std::string CsvWriter::str() const { return text_; }

void CsvWriter::write(const std::filesystem::path& path) const { write_text(path, text_); }

void write_spec(const TaskSetSpec& spec, const RunContext& ctx) {
  write_text(ctx.out_dir / "c_in.csv", matrix_to_csv(spec.c_in().entries()));
  write_text(ctx.out_dir / "c_out.csv", matrix_to_csv(spec.c_out().entries()));
}

Json spec_summary(const TaskSetSpec& spec) {
  return {{"tasks", spec.tasks()},
          {"digest", spec.digest()},
          {"mean_input_similarity", spec.tasks() > 1 ? spec.c_in().mean_off_diagonal() : 0.0},
          {"c_in", matrix_to_json(spec.c_in().entries())["entries"]},
          {"c_out", matrix_to_json(spec.c_out().entries())["entries"]}};
}

std::ostream& log(const RunContext& ctx) {
  static NullBuffer null_buffer;
  static std::ostream null_stream(&null_buffer);
  return ctx.log ? *ctx.log : null_stream;
}

std::string file_token(const Ordering& ord) {
  std::string s = ord.to_string();
  for (char& c : s)
    if (c == '>') c = '-';
  return s;
}

}  // namespace taskorder::cli::detail
