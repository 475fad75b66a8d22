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

#include "taskorder/graph.hpp"

#include <cmath>
#include <cstdlib>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "taskorder/error.hpp"

namespace taskorder {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// All-pairs hop distances on a perfect binary tree in heap layout
// (children of node i are 2i+1 and 2i+2).
Eigen::MatrixXi tree_distances(int nodes) {
  std::vector<std::vector<int>> adj(nodes);
  for (int i = 0; i < nodes; ++i) {
    for (int c : {2 * i + 1, 2 * i + 2}) {
      if (c < nodes) {
        adj[i].push_back(c);
        adj[c].push_back(i);
      }
    }
  }
  Eigen::MatrixXi dist = Eigen::MatrixXi::Constant(nodes, nodes, -1);
  for (int s = 0; s < nodes; ++s) {
    std::queue<int> frontier;
    dist(s, s) = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adj[u]) {
        if (dist(s, v) < 0) {
          dist(s, v) = dist(s, u) + 1;
          frontier.push(v);
        }
      }
    }
  }
  return dist;
}

}  // namespace

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Chain: return "chain";
    case GraphKind::Ring: return "ring";
    case GraphKind::Tree: return "tree";
    case GraphKind::Leaves: return "leaves";
  }
  return "unknown";
}

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "chain") return GraphKind::Chain;
  if (name == "ring") return GraphKind::Ring;
  if (name == "tree") return GraphKind::Tree;
  if (name == "leaves") return GraphKind::Leaves;
  fail(ErrorKind::InvalidArgument, "unknown graph kind '" + std::string(name) + "'");
}

Eigen::MatrixXi graph_distances(const GraphSpec& spec) {
  const int p = spec.size;
  if (p < 1) fail(ErrorKind::UnsupportedSize, "graph size must be positive");
  switch (spec.kind) {
    case GraphKind::Chain: {
      Eigen::MatrixXi d(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) d(i, j) = std::abs(i - j);
      return d;
    }
    case GraphKind::Ring: {
      Eigen::MatrixXi d(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) d(i, j) = std::min(std::abs(i - j), p - std::abs(i - j));
      return d;
    }
    case GraphKind::Tree: {
      if (p < 3 || !is_power_of_two(p + 1)) {
        std::ostringstream msg;
        msg << "tree size " << p << " is not a perfect binary tree (3, 7, 15, ...)";
        fail(ErrorKind::UnsupportedSize, msg.str());
      }
      return tree_distances(p);
    }
    case GraphKind::Leaves: {
      if (p < 2 || !is_power_of_two(p)) {
        std::ostringstream msg;
        msg << "leaf count " << p << " does not match a perfect binary tree (2, 4, 8, ...)";
        fail(ErrorKind::UnsupportedSize, msg.str());
      }
      const int nodes = 2 * p - 1;
      const int first_leaf = p - 1;
      return tree_distances(nodes).block(first_leaf, first_leaf, p, p);
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown graph kind");
}

CorrelationMatrix graph_similarity(const GraphSpec& spec) {
  if (!(spec.a > 0.0 && spec.a < 1.0)) {
    std::ostringstream msg;
    msg << "neighbor similarity a=" << spec.a << " must lie in (0, 1)";
    fail(ErrorKind::InvalidArgument, msg.str());
  }
  const Eigen::MatrixXi d = graph_distances(spec);
  Matrix c(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j) c(i, j) = std::pow(spec.a, d(i, j));
  return CorrelationMatrix::validate(c);
}

}  // namespace taskorder
