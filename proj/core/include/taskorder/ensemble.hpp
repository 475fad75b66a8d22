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
#include <vector>

#include "taskorder/correlation.hpp"
#include "taskorder/task_spec.hpp"

namespace taskorder {

/// Latent, input and output widths of the teacher.
struct Dimensions {
  int n_s = 30;
  int n_x = 3000;
  int n_y = 10;

  /// Throws InvalidArgument unless n_s >= 1, n_x >= n_s, n_y >= 1.
  void validate() const;
  double gamma() const { return static_cast<double>(n_s) / n_x; }
};

/// One draw of the task mixers. Each entry position (i, j) carries a
/// P-vector across tasks with covariance C / n_s.
struct EnsembleSample {
  Dimensions dims;
  std::vector<Matrix> a_mats;  // n_x x n_s
  std::vector<Matrix> b_mats;  // n_y x n_s
  std::uint64_t seed = 0;

  int tasks() const { return static_cast<int>(a_mats.size()); }
};

EnsembleSample sample_ensemble(const TaskSetSpec& spec, const Dimensions& dims, std::uint64_t seed);

struct TrainingConfig {
  double eta = 1e-3;
  int iters_per_task = 100;
  /// Gradient multiplier: the step is W += eta * scale * (B - W A) A^T.
  /// 1 is plain gradient flow on (1/2)||B - W A||^2; 2 / n_y follows the
  /// normalized loss (1/n_y)||B - W A||^2 literally.
  double gradient_scale = 1.0;

  void validate() const;
};

struct StudentState {
  Matrix w;                   // n_y x n_x
  Ordering ordering;
  /// Row 0 is the untrained state; row k holds every task's error after the
  /// k-th trained task. Columns are task indices.
  Matrix stage_errors;

  double final_error() const { return stage_errors.row(stage_errors.rows() - 1).sum(); }
};

/// Threshold on the relative smallest singular value of each A.
inline constexpr double kRankCutoff = 1e-10;
inline constexpr double kDivergenceThreshold = 1e6;

/// Exact converged update per task, W <- W (I - U U^T) + B A^+.
StudentState train_closed(const EnsembleSample& sample, const Ordering& ord);

/// Full-batch gradient descent from zero, sequential over the ordering.
/// Throws Diverged once any task error exceeds 1e6 or turns non-finite.
StudentState train_gd(const EnsembleSample& sample, const Ordering& ord, const TrainingConfig& cfg);

/// (1/n_y) ||B_mu - W A_mu||_F^2.
double task_error(const Matrix& w, const EnsembleSample& sample, int mu);

enum class Trainer { Closed, GradientDescent };

struct MonteCarloEstimate {
  double mean = 0.0;
  double sem = 0.0;
  std::vector<double> samples;  // per seed, in seed order
};

/// Mean and standard error of the summed final error over n_seeds ensembles.
/// Seed k uses derive_seed(seed, k), so results do not depend on `threads`.
MonteCarloEstimate mc_final_error(const TaskSetSpec& spec, const Dimensions& dims, const Ordering& ord,
                                  int n_seeds, std::uint64_t seed, Trainer trainer,
                                  const TrainingConfig& cfg = {}, int threads = 1);

/// ||U U^T - gamma A A^T||_F / ||U U^T||_F for task mu, evaluated from the
/// singular values of A without forming the n_x x n_x projectors.
double projector_deviation(const EnsembleSample& sample, int mu);

}  // namespace taskorder
