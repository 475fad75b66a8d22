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

#include "taskorder/ensemble.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <sstream>

#include "taskorder/analytic.hpp"
#include "taskorder/error.hpp"
#include "taskorder/parallel.hpp"
#include "taskorder/random.hpp"

namespace taskorder {
namespace {

// mixers[mu] = sum_nu root(mu, nu) Z_nu / sqrt(n_s), Z_nu i.i.d. standard normal.
std::vector<Matrix> correlated_mixers(const Matrix& root, int rows, int cols, double scale, Rng& rng) {
  const int p = static_cast<int>(root.rows());
  std::normal_distribution<double> normal;
  std::vector<Matrix> z(p, Matrix(rows, cols));
  for (auto& m : z)
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = normal(rng);
  std::vector<Matrix> out(p, Matrix::Zero(rows, cols));
  for (int mu = 0; mu < p; ++mu) {
    for (int nu = 0; nu < p; ++nu)
      if (root(mu, nu) != 0.0) out[mu].noalias() += root(mu, nu) * z[nu];
    out[mu] *= scale;
  }
  return out;
}

void require_task(const EnsembleSample& sample, int mu) {
  if (mu < 0 || mu >= sample.tasks()) {
    std::ostringstream msg;
    msg << "task index " << mu << " outside [0, " << sample.tasks() << ")";
    fail(ErrorKind::IndexOutOfRange, msg.str());
  }
}

void require_ordering(const EnsembleSample& sample, const Ordering& ord) {
  if (ord.size() != sample.tasks()) {
    std::ostringstream msg;
    msg << "ordering has " << ord.size() << " tasks, sample has " << sample.tasks();
    fail(ErrorKind::SizeMismatch, msg.str());
  }
}

void record_stage(StudentState& state, const EnsembleSample& sample, int stage) {
  for (int mu = 0; mu < sample.tasks(); ++mu) state.stage_errors(stage, mu) = task_error(state.w, sample, mu);
}

StudentState initial_state(const EnsembleSample& sample, const Ordering& ord) {
  StudentState state;
  state.w = Matrix::Zero(sample.dims.n_y, sample.dims.n_x);
  state.ordering = ord;
  state.stage_errors = Matrix::Zero(sample.tasks() + 1, sample.tasks());
  record_stage(state, sample, 0);
  return state;
}

}  // namespace

void Dimensions::validate() const {
  if (n_s < 1 || n_x < n_s || n_y < 1) {
    std::ostringstream msg;
    msg << "invalid dimensions n_s=" << n_s << " n_x=" << n_x << " n_y=" << n_y;
    fail(ErrorKind::InvalidArgument, msg.str());
  }
}

void TrainingConfig::validate() const {
  if (!(eta > 0.0) || iters_per_task < 1 || !(gradient_scale > 0.0)) {
    std::ostringstream msg;
    msg << "invalid training config eta=" << eta << " iters_per_task=" << iters_per_task
        << " gradient_scale=" << gradient_scale;
    fail(ErrorKind::InvalidArgument, msg.str());
  }
}

EnsembleSample sample_ensemble(const TaskSetSpec& spec, const Dimensions& dims, std::uint64_t seed) {
  dims.validate();
  const Matrix root_in = psd_sqrt(spec.c_in());
  const Matrix root_out = psd_sqrt(spec.c_out());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dims.n_s));
  Rng rng(seed);
  EnsembleSample out;
  out.dims = dims;
  out.seed = seed;
  out.a_mats = correlated_mixers(root_in, dims.n_x, dims.n_s, scale, rng);
  out.b_mats = correlated_mixers(root_out, dims.n_y, dims.n_s, scale, rng);
  return out;
}

double task_error(const Matrix& w, const EnsembleSample& sample, int mu) {
  require_task(sample, mu);
  const Matrix residual = sample.b_mats[mu] - w * sample.a_mats[mu];
  return residual.squaredNorm() / sample.dims.n_y;
}

StudentState train_closed(const EnsembleSample& sample, const Ordering& ord) {
  require_ordering(sample, ord);
  StudentState state = initial_state(sample, ord);
  for (int k = 0; k < ord.size(); ++k) {
    const int mu = ord[k];
    const Matrix& a = sample.a_mats[mu];
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(0) > 0.0) || sv(sv.size() - 1) < kRankCutoff * sv(0)) {
      std::ostringstream msg;
      msg << "input mixer of task " << mu + 1 << " is rank deficient";
      fail(ErrorKind::RankDeficient, msg.str());
    }
    const Matrix& u = svd.matrixU();
    const Matrix pinv_t = u * sv.cwiseInverse().asDiagonal() * svd.matrixV().transpose();
    const Matrix wu = state.w * u;
    state.w.noalias() -= wu * u.transpose();
    state.w.noalias() += sample.b_mats[mu] * pinv_t.transpose();
    record_stage(state, sample, k + 1);
  }
  return state;
}

StudentState train_gd(const EnsembleSample& sample, const Ordering& ord, const TrainingConfig& cfg) {
  cfg.validate();
  require_ordering(sample, ord);
  StudentState state = initial_state(sample, ord);
  const double step = cfg.eta * cfg.gradient_scale;
  for (int k = 0; k < ord.size(); ++k) {
    const int mu = ord[k];
    const Matrix& a = sample.a_mats[mu];
    const Matrix& b = sample.b_mats[mu];
    Matrix residual(b.rows(), b.cols());
    for (int it = 0; it < cfg.iters_per_task; ++it) {
      residual = b;
      residual.noalias() -= state.w * a;
      const double err = residual.squaredNorm() / sample.dims.n_y;
      if (!std::isfinite(err) || err > kDivergenceThreshold) {
        std::ostringstream msg;
        msg << "task " << mu + 1 << " error " << err << " at iteration " << it << " (eta=" << cfg.eta << ")";
        fail(ErrorKind::Diverged, msg.str());
      }
      state.w.noalias() += step * residual * a.transpose();
    }
    record_stage(state, sample, k + 1);
    for (int nu = 0; nu < sample.tasks(); ++nu) {
      const double err = state.stage_errors(k + 1, nu);
      if (!std::isfinite(err) || err > kDivergenceThreshold) {
        std::ostringstream msg;
        msg << "task " << nu + 1 << " error " << err << " after stage " << k + 1 << " (eta=" << cfg.eta << ")";
        fail(ErrorKind::Diverged, msg.str());
      }
    }
  }
  return state;
}

MonteCarloEstimate mc_final_error(const TaskSetSpec& spec, const Dimensions& dims, const Ordering& ord,
                                  int n_seeds, std::uint64_t seed, Trainer trainer,
                                  const TrainingConfig& cfg, int threads) {
  if (n_seeds < 2) fail(ErrorKind::InvalidArgument, "Monte Carlo estimate needs at least 2 seeds");
  if (ord.size() != spec.tasks()) fail(ErrorKind::SizeMismatch, "ordering does not match spec");
  dims.validate();
  if (trainer == Trainer::GradientDescent) cfg.validate();
  MonteCarloEstimate out;
  out.samples.assign(n_seeds, 0.0);
  parallel_for(static_cast<std::size_t>(n_seeds), threads, [&](std::size_t k) {
    const EnsembleSample sample = sample_ensemble(spec, dims, derive_seed(seed, k));
    const StudentState state =
        trainer == Trainer::Closed ? train_closed(sample, ord) : train_gd(sample, ord, cfg);
    out.samples[k] = state.final_error();
  });
  const double n = n_seeds;
  double sum = 0.0;
  for (double v : out.samples) sum += v;
  out.mean = sum / n;
  double ss = 0.0;
  for (double v : out.samples) ss += (v - out.mean) * (v - out.mean);
  out.sem = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

double projector_deviation(const EnsembleSample& sample, int mu) {
  require_task(sample, mu);
  const Matrix& a = sample.a_mats[mu];
  Eigen::BDCSVD<Matrix> svd(a);
  const Vector& sv = svd.singularValues();
  const double gamma = sample.dims.gamma();
  // U U^T and gamma A A^T share eigenvectors; the projector has n_s unit eigenvalues.
  double ss = 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double lam = gamma * sv(i) * sv(i);
    if (sv(0) > 0.0 && sv(i) >= kRankCutoff * sv(0)) {
      ss += (1.0 - lam) * (1.0 - lam);
      ++rank;
    } else {
      ss += lam * lam;
    }
  }
  if (rank == 0) fail(ErrorKind::RankDeficient, "input mixer is zero");
  return std::sqrt(ss / rank);
}

}  // namespace taskorder
