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

#include "taskorder/order_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "taskorder/error.hpp"
#include "taskorder/parallel.hpp"
#include "taskorder/perturbation.hpp"
#include "taskorder/random.hpp"

namespace taskorder {
namespace {

std::uint64_t factorial(int n) {
  std::uint64_t out = 1;
  for (int k = 2; k <= n; ++k) out *= static_cast<std::uint64_t>(k);
  return out;
}

// The index-th permutation of {0..n-1} in lexicographic order.
std::vector<int> nth_permutation(int n, std::uint64_t index) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(n);
  for (int k = n; k >= 1; --k) {
    const std::uint64_t block = factorial(k - 1);
    const auto pick = static_cast<std::size_t>(index / block);
    index %= block;
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

// Indices sorted by value where values within `tol` of the first member of
// their run count as tied, and ties are listed by ascending index.
std::vector<std::uint64_t> tie_aware_order(const std::vector<double>& values, double tol) {
  std::vector<std::uint64_t> index(values.size());
  std::iota(index.begin(), index.end(), 0);
  std::stable_sort(index.begin(), index.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return values[a] < values[b]; });
  for (std::size_t begin = 0; begin < index.size();) {
    std::size_t end = begin + 1;
    while (end < index.size() && values[index[end]] - values[index[begin]] <= tol) ++end;
    std::sort(index.begin() + static_cast<std::ptrdiff_t>(begin), index.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return index;
}

bool is_uniform_off_diagonal(const Matrix& c, double& value) {
  const Eigen::Index p = c.rows();
  if (p < 2) return false;
  value = c(0, 1);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      if (i != j && c(i, j) != value) return false;
  return true;
}

}  // namespace

std::size_t RankedOrders::rank_of(const Ordering& ord) const {
  for (std::size_t k = 0; k < orders.size(); ++k)
    if (orders[k].ordering == ord) return k;
  fail(ErrorKind::InvalidArgument, "ordering " + ord.to_string() + " is not in the ranking");
}

RankedOrders enumerate_orders(const TaskSetSpec& spec, int limit_p, int threads) {
  const int p = spec.tasks();
  if (p > limit_p) {
    std::ostringstream msg;
    msg << p << " tasks exceed the enumeration limit of " << limit_p;
    fail(ErrorKind::TooManyTasks, msg.str());
  }
  const std::uint64_t total = factorial(p);
  const OrderEvaluator evaluate(spec);

  // One contiguous lexicographic block per chunk; each chunk seeds its first
  // permutation from the factorial number system and steps with next_permutation.
  const std::size_t chunks = std::min<std::uint64_t>(total, 256);
  std::vector<double> errors(total);
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    const std::uint64_t begin = total * chunk / chunks;
    const std::uint64_t end = total * (chunk + 1) / chunks;
    std::vector<int> perm = nth_permutation(p, begin);
    for (std::uint64_t k = begin; k < end; ++k) {
      errors[k] = ErrorValue(evaluate(perm)).value();
      std::next_permutation(perm.begin(), perm.end());
    }
  });

  const std::vector<std::uint64_t> index = tie_aware_order(errors, kErrorTieResolution);

  RankedOrders out;
  out.spec_digest = spec.digest();
  out.orders.reserve(total);
  for (std::uint64_t k : index)
    out.orders.push_back({Ordering::from_zero_based(nth_permutation(p, k)), ErrorValue(errors[k])});
  return out;
}

Ordering typicality_order(const Matrix& similarity, Direction direction) {
  std::vector<double> t = typicality(similarity);
  if (direction == Direction::CoreToPeriphery)
    for (double& v : t) v = -v;
  std::vector<int> perm;
  for (std::uint64_t k : tie_aware_order(t, kTypicalityTieResolution)) perm.push_back(static_cast<int>(k));
  return Ordering::from_zero_based(std::move(perm));
}

ExtremalPath extremal_path(const Matrix& similarity, PathObjective objective) {
  const int p = static_cast<int>(similarity.rows());
  if (similarity.cols() != p) fail(ErrorKind::ShapeMismatch, "similarity matrix must be square");
  if (p > kMaxPathTasks) {
    std::ostringstream msg;
    msg << p << " tasks exceed the exact path limit of " << kMaxPathTasks;
    fail(ErrorKind::TooManyTasks, msg.str());
  }
  if (p < 1) fail(ErrorKind::UnsupportedSize, "path search needs at least one task");

  const double sign = objective == PathObjective::Max ? 1.0 : -1.0;
  Matrix w(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) w(i, j) = sign * (1.0 - similarity(i, j));
  const double tol = 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff() * p);

  // best[S][v]: largest signed length of a path that starts at v and visits
  // exactly the tasks in S (v in S). count[S][v]: number of such optimal paths.
  const std::size_t subsets = std::size_t{1} << p;
  const double none = -std::numeric_limits<double>::infinity();
  std::vector<double> best(subsets * p, none);
  std::vector<std::uint64_t> count(subsets * p, 0);
  auto at = [p](std::size_t s, int v) { return s * static_cast<std::size_t>(p) + v; };
  for (int v = 0; v < p; ++v) {
    best[at(std::size_t{1} << v, v)] = 0.0;
    count[at(std::size_t{1} << v, v)] = 1;
  }
  for (std::size_t s = 1; s < subsets; ++s) {
    if ((s & (s - 1)) == 0) continue;
    for (int v = 0; v < p; ++v) {
      if (!(s >> v & 1)) continue;
      const std::size_t rest = s & ~(std::size_t{1} << v);
      double top = none;
      for (int u = 0; u < p; ++u)
        if (rest >> u & 1) top = std::max(top, w(v, u) + best[at(rest, u)]);
      std::uint64_t n = 0;
      for (int u = 0; u < p; ++u)
        if ((rest >> u & 1) && w(v, u) + best[at(rest, u)] >= top - tol) n += count[at(rest, u)];
      best[at(s, v)] = top;
      count[at(s, v)] = n;
    }
  }

  const std::size_t all = subsets - 1;
  double top = none;
  for (int v = 0; v < p; ++v) top = std::max(top, best[at(all, v)]);
  std::uint64_t total = 0;
  int start = -1;
  for (int v = 0; v < p; ++v) {
    if (best[at(all, v)] >= top - tol) {
      total += count[at(all, v)];
      if (start < 0) start = v;
    }
  }

  std::vector<int> seq{start};
  std::size_t s = all;
  int v = start;
  while (seq.size() < static_cast<std::size_t>(p)) {
    const std::size_t rest = s & ~(std::size_t{1} << v);
    for (int u = 0; u < p; ++u) {
      if ((rest >> u & 1) && w(v, u) + best[at(rest, u)] >= best[at(s, v)] - tol) {
        seq.push_back(u);
        s = rest;
        v = u;
        break;
      }
    }
  }

  ExtremalPath out;
  out.ordering = Ordering::from_zero_based(seq);
  out.twin = out.ordering.reversed();
  out.length = hamiltonian_length(similarity, out.ordering);
  out.optimum_count = total;
  return out;
}

std::vector<Ordering> random_orderings(int tasks, int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "need at least one random ordering");
  if (tasks < 1) fail(ErrorKind::UnsupportedSize, "need at least one task");
  Rng rng(seed);
  std::vector<Ordering> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    std::vector<int> perm(tasks);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = tasks - 1; i > 0; --i) {
      const auto j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    out.push_back(Ordering::from_zero_based(std::move(perm)));
  }
  return out;
}

const RuleEntry& RuleReport::rule(const std::string& name) const {
  for (const auto& r : rules)
    if (r.rule == name) return r;
  fail(ErrorKind::InvalidArgument, "unknown rule '" + name + "'");
}

RuleReport compare_rules(const TaskSetSpec& spec, int n_random, std::uint64_t seed) {
  const int p = spec.tasks();
  if (p < 2) fail(ErrorKind::UnsupportedSize, "rule comparison needs at least 2 tasks");
  const OrderEvaluator evaluate(spec);
  const Matrix& c_in = spec.c_in().entries();

  double rho_o = 0.0;
  std::optional<GCoefficients> coeff;
  if (is_uniform_off_diagonal(spec.c_out().entries(), rho_o)) {
    const double m = spec.c_in().mean_off_diagonal();
    if (m > -1.0 && m < 1.0) coeff = g_functions(m, rho_o, p);
  }

  RuleReport report;
  report.spec_digest = spec.digest();
  report.tasks = p;
  report.mean_similarity = spec.c_in().mean_off_diagonal();

  auto make_entry = [&](const char* name, const Ordering& ord) {
    RuleEntry e;
    e.rule = name;
    e.ordering = ord;
    e.error = evaluate.error(ord);
    e.rule_error = e.error.value();
    if (coeff) {
      const PerturbationSpec pert = decompose(spec.c_in().permuted(ord.tasks()), rho_o);
      e.delta_plus = weighted_pair_sum(coeff->g_plus_part, pert.delta_m);
      e.delta_minus = weighted_pair_sum(coeff->g_minus_part, pert.delta_m);
    }
    return e;
  };
  auto make_path_entry = [&](const char* name, const ExtremalPath& path) {
    RuleEntry e = make_entry(name, path.ordering);
    e.twin = path.twin;
    e.twin_error = evaluate.error(path.twin);
    e.rule_error = 0.5 * (e.error.value() + e.twin_error->value());
    e.optimum_count = path.optimum_count;
    return e;
  };

  report.rules.push_back(make_entry(kPeripheryToCore, typicality_order(c_in, Direction::PeripheryToCore)));
  report.rules.push_back(make_entry(kCoreToPeriphery, typicality_order(c_in, Direction::CoreToPeriphery)));
  report.rules.push_back(make_path_entry(kMaxPath, extremal_path(c_in, PathObjective::Max)));
  report.rules.push_back(make_path_entry(kMinPath, extremal_path(c_in, PathObjective::Min)));

  const std::vector<Ordering> baseline = random_orderings(p, n_random, seed);
  std::vector<double> values;
  values.reserve(baseline.size());
  for (const auto& ord : baseline) values.push_back(evaluate(ord.tasks()));
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  report.random.n = n_random;
  report.random.mean = mean;
  report.random.sem = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return report;
}

}  // namespace taskorder
