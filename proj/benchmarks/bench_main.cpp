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

#include <benchmark/benchmark.h>

#include "taskorder/analytic.hpp"
#include "taskorder/correlation.hpp"
#include "taskorder/ensemble.hpp"
#include "taskorder/graph.hpp"
#include "taskorder/order_opt.hpp"

namespace {

using namespace taskorder;

TaskSetSpec random_spec(int p) {
  if (p > 8) return TaskSetSpec(graph_similarity({GraphKind::Ring, p, 0.5}), CorrelationMatrix::uniform(p, 0.8));
  return TaskSetSpec(sample_correlation(p, 0.0, 1.0, 1, 100000000), sample_correlation(p, 0.0, 1.0, 2, 100000000));
}

void BM_FinalError(benchmark::State& state) {
  const TaskSetSpec spec = random_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(final_error(spec).value());
}
BENCHMARK(BM_FinalError)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_OrderEvaluator(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const OrderEvaluator evaluate(random_spec(p));
  std::vector<int> perm(p);
  for (int k = 0; k < p; ++k) perm[k] = p - 1 - k;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(perm));
}
BENCHMARK(BM_OrderEvaluator)->Arg(5)->Arg(8)->Arg(10);

void BM_EnumerateOrders(benchmark::State& state) {
  const TaskSetSpec spec = random_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_orders(spec).best().error.value());
}
BENCHMARK(BM_EnumerateOrders)->Arg(5)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExtremalPath(benchmark::State& state) {
  const CorrelationMatrix c = graph_similarity({GraphKind::Ring, static_cast<int>(state.range(0)), 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(extremal_path(c, PathObjective::Max).length);
}
BENCHMARK(BM_ExtremalPath)->Arg(7)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SampleCorrelation(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_correlation(static_cast<int>(state.range(0)), 0.0, 1.0, seed++, 100000000));
}
BENCHMARK(BM_SampleCorrelation)->Arg(5)->Arg(8);

void BM_TrainClosed(benchmark::State& state) {
  const TaskSetSpec spec = random_spec(5);
  const EnsembleSample sample = sample_ensemble(spec, Dimensions{}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(train_closed(sample, Ordering::identity(5)).final_error());
}
BENCHMARK(BM_TrainClosed)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
