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

#include <string_view>

#include "taskorder/correlation.hpp"

namespace taskorder {

enum class GraphKind { Chain, Ring, Tree, Leaves };

std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view name);

/// Unweighted task graph whose hop distances D define C_ij = a^D_ij.
/// Tree graphs are perfect binary trees (every internal node has two
/// children), so a tree has 2^d - 1 nodes and its leaf set 2^(d-1) nodes.
struct GraphSpec {
  GraphKind kind = GraphKind::Chain;
  int size = 0;
  double a = 0.5;
};

/// Hop-distance matrix of the task nodes (leaves only for GraphKind::Leaves).
Eigen::MatrixXi graph_distances(const GraphSpec& spec);

CorrelationMatrix graph_similarity(const GraphSpec& spec);

}  // namespace taskorder
