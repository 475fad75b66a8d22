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

#include "taskorder_cli/config.hpp"

#include <charconv>
#include <optional>
#include <system_error>

#include "taskorder/correlation.hpp"
#include "taskorder/error.hpp"
#include "taskorder/graph.hpp"
#include "taskorder/io.hpp"

namespace taskorder::cli {
namespace {

CorrelationMatrix matrix_field(const Json& value, const char* what) {
  if (value.is_string()) return read_correlation(value.get<std::string>());
  if (value.is_array() || value.is_object()) return CorrelationMatrix::validate(matrix_from_json(value));
  fail(ErrorKind::ParseError, std::string(what) + " must be a path or a matrix");
}

}  // namespace

template <typename T>
T get_or(const Json& obj, const char* key, const T& fallback) {
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, std::string("config key \"") + key + "\": " + e.what());
  }
}

template int get_or<int>(const Json&, const char*, const int&);
template double get_or<double>(const Json&, const char*, const double&);
template bool get_or<bool>(const Json&, const char*, const bool&);
template std::string get_or<std::string>(const Json&, const char*, const std::string&);
template std::uint64_t get_or<std::uint64_t>(const Json&, const char*, const std::uint64_t&);

void set_default(Json& obj, const char* key, const Json& value) {
  if (!obj.contains(key) || obj.at(key).is_null()) obj[key] = value;
}

std::string short_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return format_double(v);
  return std::string(buf, ptr);
}

Json normalize_spec(const Json& spec, std::uint64_t seed) {
  if (!spec.is_object()) fail(ErrorKind::InvalidArgument, "config lacks a \"spec\" object");
  Json s = spec;
  if (!s.contains("source")) s["source"] = s.contains("c_in") ? (s["c_in"].is_string() ? "file" : "inline") : "graph";
  const std::string source = get_or<std::string>(s, "source", "graph");
  if (source == "graph") {
    set_default(s, "kind", "chain");
    if (!s.contains("size")) fail(ErrorKind::InvalidArgument, "graph spec needs \"size\"");
    set_default(s, "a", 0.5);
  } else if (source == "random") {
    if (!s.contains("size")) fail(ErrorKind::InvalidArgument, "random spec needs \"size\"");
    set_default(s, "lo", -1.0);
    set_default(s, "hi", 1.0);
    set_default(s, "max_tries", kDefaultMaxTries);
    set_default(s, "seed", seed);
  } else if (source == "file" || source == "inline") {
    if (!s.contains("c_in")) fail(ErrorKind::InvalidArgument, source + " spec needs \"c_in\"");
  } else {
    fail(ErrorKind::InvalidArgument, "unknown spec source '" + source + "'");
  }
  if (!s.contains("c_out")) set_default(s, "rho_o", 1.0);
  return s;
}

TaskSetSpec build_spec(const Json& spec, std::uint64_t seed) {
  const Json s = normalize_spec(spec, seed);
  const std::string source = s.at("source").get<std::string>();
  std::optional<CorrelationMatrix> c_in;
  if (source == "graph") {
    GraphSpec g;
    g.kind = parse_graph_kind(get_or<std::string>(s, "kind", "chain"));
    g.size = get_or<int>(s, "size", 0);
    g.a = get_or<double>(s, "a", 0.5);
    c_in = graph_similarity(g);
  } else if (source == "random") {
    c_in = sample_correlation(get_or<int>(s, "size", 0), get_or<double>(s, "lo", -1.0),
                              get_or<double>(s, "hi", 1.0), get_or<std::uint64_t>(s, "seed", seed),
                              get_or<int>(s, "max_tries", kDefaultMaxTries));
  } else {
    c_in = matrix_field(s.at("c_in"), "c_in");
  }
  if (s.contains("c_out")) return TaskSetSpec(*c_in, matrix_field(s.at("c_out"), "c_out"));
  return TaskSetSpec(*c_in, CorrelationMatrix::uniform(c_in->size(), get_or<double>(s, "rho_o", 1.0)));
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace taskorder::cli
