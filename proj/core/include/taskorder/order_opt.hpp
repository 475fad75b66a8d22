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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taskorder/analytic.hpp"
#include "taskorder/correlation.hpp"
#include "taskorder/task_spec.hpp"

namespace taskorder {

inline constexpr int kDefaultEnumerationLimit = 10;
inline constexpr int kMaxPathTasks = 16;
inline constexpr int kDefaultRandomOrders = 30;

/// Errors closer than this are treated as equal when ranking orders.
inline constexpr double kErrorTieResolution = 1e-12;
inline constexpr double kTypicalityTieResolution = 1e-10;

struct RankedOrder {
  Ordering ordering;
  ErrorValue error;
};

/// Every ordering of one spec, ascending by error; equal errors keep
/// lexicographic ordering.
struct RankedOrders {
  std::vector<RankedOrder> orders;
  std::string spec_digest;

  const RankedOrder& best() const { return orders.front(); }
  const RankedOrder& worst() const { return orders.back(); }
  /// 0-based rank of `ord` (its index in `orders`); throws InvalidArgument if absent.
  std::size_t rank_of(const Ordering& ord) const;
};

/// Exhaustive evaluation of all P! orderings. Throws TooManyTasks when
/// P > limit_p. The result does not depend on `threads`.
RankedOrders enumerate_orders(const TaskSetSpec& spec, int limit_p = kDefaultEnumerationLimit,
                              int threads = 1);

enum class Direction { PeripheryToCore, CoreToPeriphery };

/// Sorts tasks by typicality (ascending for PeripheryToCore), ties by index.
Ordering typicality_order(const Matrix& similarity, Direction direction);
inline Ordering typicality_order(const CorrelationMatrix& c, Direction direction) {
  return typicality_order(c.entries(), direction);
}

enum class PathObjective { Max, Min };

struct ExtremalPath {
  Ordering ordering;  // lexicographically smallest optimum
  Ordering twin;      // its reversal, equally long
  double length = 0.0;
  /// Number of directed task sequences attaining the optimum (twins counted
  /// separately, so a unique undirected path gives 2).
  std::uint64_t optimum_count = 0;
};

/// Exact Hamiltonian path on the dissimilarity graph 1 - C by dynamic
/// programming over subsets. Throws TooManyTasks for P > 16.
ExtremalPath extremal_path(const Matrix& similarity, PathObjective objective);
inline ExtremalPath extremal_path(const CorrelationMatrix& c, PathObjective objective) {
  return extremal_path(c.entries(), objective);
}

/// n uniformly random permutations of P tasks (Fisher-Yates), reproducible from seed.
std::vector<Ordering> random_orderings(int tasks, int n, std::uint64_t seed);

struct RuleEntry {
  std::string rule;
  Ordering ordering;
  ErrorValue error;                 // ordered_error(spec, ordering)
  std::optional<Ordering> twin;     // set for the path rules
  std::optional<ErrorValue> twin_error;
  double rule_error = 0.0;          // error, or the twin mean for path rules
  std::optional<std::uint64_t> optimum_count;
  /// First-order split of the order effect into position and gap parts.
  /// Only filled when C_out has a uniform off-diagonal.
  std::optional<double> delta_plus;
  std::optional<double> delta_minus;
};

struct RandomBaseline {
  int n = 0;
  double mean = 0.0;
  double sem = 0.0;
};

struct RuleReport {
  std::string spec_digest;
  int tasks = 0;
  double mean_similarity = 0.0;
  std::vector<RuleEntry> rules;  // periphery_to_core, core_to_periphery, max_path, min_path
  RandomBaseline random;

  /// Throws InvalidArgument for an unknown rule name.
  const RuleEntry& rule(const std::string& name) const;
};

inline constexpr const char* kPeripheryToCore = "periphery_to_core";
inline constexpr const char* kCoreToPeriphery = "core_to_periphery";
inline constexpr const char* kMaxPath = "max_path";
inline constexpr const char* kMinPath = "min_path";

/// Requires 2 <= P <= 16 and n_random >= 1.
RuleReport compare_rules(const TaskSetSpec& spec, int n_random = kDefaultRandomOrders,
                         std::uint64_t seed = 0);

}  // namespace taskorder
