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

#include "taskorder/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "taskorder/error.hpp"

namespace taskorder {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || field.empty()) {
    std::ostringstream msg;
    msg << "line " << line << ": '" << field << "' is not a number";
    fail(ErrorKind::ParseError, msg.str());
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view field, std::size_t line) {
  field = trim(field);
  Int v = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || field.empty()) {
    std::ostringstream msg;
    msg << "line " << line << ": '" << field << "' is not an integer";
    fail(ErrorKind::ParseError, msg.str());
  }
  return v;
}

nlohmann::json rule_entry_json(const RuleEntry& e) {
  nlohmann::json j;
  j["rule"] = e.rule;
  j["ordering"] = e.ordering.to_string();
  j["error"] = e.error.value();
  j["rule_error"] = e.rule_error;
  if (e.twin) j["twin"] = e.twin->to_string();
  if (e.twin_error) j["twin_error"] = e.twin_error->value();
  if (e.optimum_count) j["optimum_count"] = *e.optimum_count;
  if (e.delta_plus) j["delta_plus"] = *e.delta_plus;
  if (e.delta_minus) j["delta_minus"] = *e.delta_minus;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out += ',';
    out += "task_" + std::to_string(j + 1);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) fail(ErrorKind::ParseError, "empty matrix CSV");
  const auto header = split(lines[0], ',');
  const auto p = static_cast<Eigen::Index>(header.size());
  for (Eigen::Index j = 0; j < p; ++j) {
    if (trim(header[j]) != "task_" + std::to_string(j + 1)) {
      fail(ErrorKind::ParseError, "header column " + std::to_string(j + 1) + " should be task_" +
                                      std::to_string(j + 1));
    }
  }
  if (static_cast<Eigen::Index>(lines.size()) - 1 != p) {
    std::ostringstream msg;
    msg << "expected " << p << " data rows, found " << lines.size() - 1;
    fail(ErrorKind::ShapeMismatch, msg.str());
  }
  Matrix m(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const auto fields = split(lines[i + 1], ',');
    if (static_cast<Eigen::Index>(fields.size()) != p) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " has " << fields.size() << " fields, expected " << p;
      fail(ErrorKind::ShapeMismatch, msg.str());
    }
    for (Eigen::Index j = 0; j < p; ++j) m(i, j) = parse_double(fields[j], i + 2);
  }
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"size", m.rows()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const nlohmann::json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) fail(ErrorKind::ParseError, "matrix object lacks \"entries\"");
    rows = &j.at("entries");
  }
  if (!rows->is_array() || rows->empty()) fail(ErrorKind::ParseError, "matrix entries must be a nonempty array");
  const auto p = static_cast<Eigen::Index>(rows->size());
  if (j.is_object() && j.contains("size")) {
    if (!j.at("size").is_number_integer() || j.at("size").get<Eigen::Index>() != p)
      fail(ErrorKind::ShapeMismatch, "\"size\" does not match the number of rows");
  }
  Matrix m(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const auto& row = (*rows)[i];
    if (!row.is_array()) fail(ErrorKind::ParseError, "matrix row is not an array");
    if (static_cast<Eigen::Index>(row.size()) != p) fail(ErrorKind::ShapeMismatch, "matrix is not square");
    for (Eigen::Index k = 0; k < p; ++k) {
      if (!row[k].is_number()) fail(ErrorKind::ParseError, "matrix entry is not a number");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

CorrelationMatrix read_correlation(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
    return CorrelationMatrix::validate(matrix_from_json(j));
  }
  return CorrelationMatrix::validate(matrix_from_csv(text));
}

nlohmann::json to_json(const RankedOrders& ranked) {
  nlohmann::json orders = nlohmann::json::array();
  for (std::size_t k = 0; k < ranked.orders.size(); ++k) {
    orders.push_back({{"rank", k + 1},
                      {"ordering", ranked.orders[k].ordering.to_string()},
                      {"error", ranked.orders[k].error.value()}});
  }
  return {{"spec_digest", ranked.spec_digest}, {"orders", std::move(orders)}};
}

nlohmann::json to_json(const RuleReport& report) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& e : report.rules) rules.push_back(rule_entry_json(e));
  return {{"spec_digest", report.spec_digest},
          {"tasks", report.tasks},
          {"mean_similarity", report.mean_similarity},
          {"rules", std::move(rules)},
          {"random", {{"n", report.random.n}, {"mean", report.random.mean}, {"sem", report.random.sem}}}};
}

nlohmann::json to_json(const ExtremalPath& path) {
  return {{"ordering", path.ordering.to_string()},
          {"twin", path.twin.to_string()},
          {"length", path.length},
          {"optimum_count", path.optimum_count}};
}

nlohmann::json flags_to_json(const SimilarityMatrix& s) {
  nlohmann::json clamped = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.clamped.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < s.clamped.cols(); ++j) row.push_back(s.clamped(i, j) != 0);
    clamped.push_back(std::move(row));
  }
  return {{"clamped", std::move(clamped)},
          {"raw", matrix_to_json(s.raw)["entries"]},
          {"asymmetry", matrix_to_json(s.asymmetry)["entries"]},
          {"any_clamped", s.any_clamped()}};
}

std::vector<TraceRow> trace_rows(const StudentState& state, std::optional<std::uint64_t> seed) {
  std::vector<TraceRow> rows;
  for (Eigen::Index k = 0; k < state.stage_errors.rows(); ++k)
    for (Eigen::Index mu = 0; mu < state.stage_errors.cols(); ++mu)
      rows.push_back({seed, static_cast<int>(k), static_cast<int>(mu) + 1, state.stage_errors(k, mu)});
  return rows;
}

std::string traces_to_csv(const std::vector<TraceRow>& rows) {
  bool with_seed = false;
  for (const auto& r : rows) with_seed = with_seed || r.seed.has_value();
  std::string out = with_seed ? "seed,stage,task,error\n" : "stage,task,error\n";
  for (const auto& r : rows) {
    if (with_seed) out += std::to_string(r.seed.value_or(0)) + ',';
    out += std::to_string(r.stage) + ',' + std::to_string(r.task) + ',' + format_double(r.error) + '\n';
  }
  return out;
}

std::vector<TraceRow> traces_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) fail(ErrorKind::ParseError, "empty trace CSV");
  bool with_seed = false;
  if (lines[0] == "seed,stage,task,error") {
    with_seed = true;
  } else if (lines[0] != "stage,task,error") {
    fail(ErrorKind::ParseError, "unexpected trace header '" + std::string(lines[0]) + "'");
  }
  const std::size_t width = with_seed ? 4 : 3;
  std::vector<TraceRow> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto f = split(lines[k], ',');
    if (f.size() != width) fail(ErrorKind::ParseError, "line " + std::to_string(k + 1) + " has the wrong width");
    TraceRow r;
    std::size_t c = 0;
    if (with_seed) r.seed = parse_int<std::uint64_t>(f[c++], k + 1);
    r.stage = parse_int<int>(f[c++], k + 1);
    r.task = parse_int<int>(f[c++], k + 1);
    r.error = parse_double(f[c], k + 1);
    rows.push_back(r);
  }
  return rows;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace taskorder
