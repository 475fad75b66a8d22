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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "error_kind.hpp"
#include "oracles.hpp"
#include "taskorder/correlation.hpp"
#include "taskorder/ensemble.hpp"
#include "taskorder/graph.hpp"
#include "taskorder/io.hpp"
#include "taskorder/order_opt.hpp"

using namespace taskorder;
using oracle::kind_of;

TEST_CASE("matrix CSV round trip is exact", "[io]") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Matrix m(4, 4);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = normal(rng) * 1e-7;
  m(1, 2) = 1.0 / 3.0;
  const std::string csv = matrix_to_csv(m);
  CHECK(csv.rfind("task_1,task_2,task_3,task_4\n", 0) == 0);
  CHECK(matrix_from_csv(csv) == m);
  CHECK(matrix_from_csv("task_1, task_2\r\n 1 ,0.5\r\n0.5,1\r\n\n")(0, 1) == 0.5);
}

TEST_CASE("matrix CSV errors", "[io]") {
  CHECK(kind_of([] { matrix_from_csv(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { matrix_from_csv("a,b\n1,0\n0,1\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { matrix_from_csv("task_1,task_2\n1,0\n"); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { matrix_from_csv("task_1,task_2\n1,0\n0\n"); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { matrix_from_csv("task_1,task_2\n1,x\n0,1\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("matrix JSON round trip", "[io]") {
  const Matrix m = graph_similarity({GraphKind::Tree, 7, 0.3}).entries();
  const auto j = matrix_to_json(m);
  CHECK(j.at("size") == 7);
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(nlohmann::json::parse(j.dump())) == m);
  CHECK(matrix_from_json(j.at("entries")) == m);
  CHECK(kind_of([] { matrix_from_json(nlohmann::json::parse(R"({"size": 3, "entries": [[1]]})")); }) ==
        ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { matrix_from_json(nlohmann::json::parse(R"({"rows": []})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { matrix_from_json(nlohmann::json::parse(R"([[1, "a"], [0, 1]])")); }) == ErrorKind::ParseError);
}

TEST_CASE("reading correlation files", "[io]") {
  const auto dir = oracle::scratch_dir("io_read");
  const Matrix m = graph_similarity({GraphKind::Chain, 4, 0.5}).entries();
  write_text(dir / "c.csv", matrix_to_csv(m));
  write_text(dir / "nested" / "c.json", matrix_to_json(m).dump());
  CHECK(read_correlation(dir / "c.csv").entries() == m);
  CHECK(read_correlation(dir / "nested" / "c.json").entries() == m);
  write_text(dir / "bad.csv", matrix_to_csv(Matrix::Constant(2, 2, 2.0)));
  CHECK(kind_of([&] { read_correlation(dir / "bad.csv"); }) == ErrorKind::NotUnitDiagonal);
  write_text(dir / "bad.json", "{");
  CHECK(kind_of([&] { read_correlation(dir / "bad.json"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { read_correlation(dir / "missing.csv"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("trace CSV round trip", "[io]") {
  const TaskSetSpec spec(CorrelationMatrix::uniform(3, 0.4), CorrelationMatrix::uniform(3, 1.0));
  const auto sample = sample_ensemble(spec, Dimensions{4, 40, 2}, 8);
  const auto state = train_closed(sample, Ordering::parse("2>3>1"));
  for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{42}}) {
    const auto rows = trace_rows(state, seed);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].stage == 0);
    CHECK(rows[0].task == 1);
    CHECK(rows.back().stage == 3);
    CHECK(rows.back().task == 3);
    const auto back = traces_from_csv(traces_to_csv(rows));
    REQUIRE(back.size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      CHECK(back[k].seed == rows[k].seed);
      CHECK(back[k].stage == rows[k].stage);
      CHECK(back[k].task == rows[k].task);
      CHECK(back[k].error == rows[k].error);
    }
  }
  CHECK(kind_of([] { traces_from_csv("a,b\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { traces_from_csv("stage,task,error\n1,2\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("report JSON", "[io]") {
  const TaskSetSpec spec(graph_similarity({GraphKind::Chain, 3, 0.5}), CorrelationMatrix::uniform(3, 1.0));
  const auto ranked = to_json(enumerate_orders(spec));
  CHECK(ranked.at("orders").size() == 6);
  CHECK(ranked.at("orders")[0].at("rank") == 1);
  const auto rules = to_json(compare_rules(spec, 5, 1));
  CHECK(rules.at("rules").size() == 4);
  CHECK(rules.at("rules")[2].contains("twin"));
  CHECK_FALSE(rules.at("rules")[0].contains("twin"));
  const auto path = to_json(extremal_path(spec.c_in(), PathObjective::Max));
  CHECK(path.at("ordering") == "1>3>2");
  CHECK(format_double(0.1) == "0.10000000000000001");
}
