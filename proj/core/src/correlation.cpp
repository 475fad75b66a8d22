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

#include "taskorder/correlation.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "taskorder/error.hpp"
#include "taskorder/random.hpp"

namespace taskorder {

double smallest_eigenvalue(const Matrix& symmetric) {
  if (symmetric.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CorrelationMatrix CorrelationMatrix::validate(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    std::ostringstream msg;
    msg << "correlation matrix must be square, got " << entries.rows() << "x" << entries.cols();
    fail(ErrorKind::ShapeMismatch, msg.str());
  }
  if (entries.rows() == 0) fail(ErrorKind::UnsupportedSize, "correlation matrix is empty");
  const Eigen::Index p = entries.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = entries(i, j);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") is not finite";
        fail(ErrorKind::EntryOutOfRange, msg.str());
      }
      if (v != entries(j, i)) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ")=" << v << " differs from (" << j << "," << i
            << ")=" << entries(j, i);
        fail(ErrorKind::NotSymmetric, msg.str());
      }
    }
    if (entries(i, i) != 1.0) {
      std::ostringstream msg;
      msg << "diagonal entry " << i << " is " << entries(i, i);
      fail(ErrorKind::NotUnitDiagonal, msg.str());
    }
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (entries(i, j) < -1.0 || entries(i, j) > 1.0) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ")=" << entries(i, j) << " outside [-1, 1]";
        fail(ErrorKind::EntryOutOfRange, msg.str());
      }
    }
  }
  const double lambda_min = smallest_eigenvalue(entries);
  if (lambda_min < -kPsdTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "smallest eigenvalue " << lambda_min << " below -" << kPsdTolerance;
    fail(ErrorKind::NotPSD, msg.str());
  }
  return CorrelationMatrix(entries);
}

CorrelationMatrix CorrelationMatrix::identity(int size) {
  if (size < 1) fail(ErrorKind::UnsupportedSize, "size must be positive");
  return CorrelationMatrix(Matrix::Identity(size, size));
}

CorrelationMatrix CorrelationMatrix::uniform(int size, double value) {
  if (size < 1) fail(ErrorKind::UnsupportedSize, "size must be positive");
  Matrix m = Matrix::Constant(size, size, value);
  m.diagonal().setOnes();
  return validate(m);
}

CorrelationMatrix CorrelationMatrix::permuted(std::span<const int> perm) const {
  const int p = size();
  if (static_cast<int>(perm.size()) != p) {
    std::ostringstream msg;
    msg << "permutation has " << perm.size() << " entries for a " << p << "x" << p << " matrix";
    fail(ErrorKind::SizeMismatch, msg.str());
  }
  Matrix out(p, p);
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) out(k, l) = entries_(perm[k], perm[l]);
  return CorrelationMatrix(std::move(out));
}

double CorrelationMatrix::mean_off_diagonal() const {
  const int p = size();
  if (p < 2) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) sum += entries_(i, j);
  return sum / (0.5 * p * (p - 1));
}

namespace {

// Cholesky of (c + shift I) with early exit. Failure proves the smallest
// eigenvalue of c is below -shift, so the candidate can be rejected without
// an eigendecomposition; success defers to the exact eigenvalue test.
bool clearly_indefinite(const Matrix& c, double shift, std::vector<double>& work) {
  const Eigen::Index n = c.rows();
  work.assign(static_cast<std::size_t>(n * n), 0.0);
  auto l = [&](Eigen::Index i, Eigen::Index j) -> double& { return work[static_cast<std::size_t>(i * n + j)]; };
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = c(j, j) + shift;
    for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return true;
    const double root = std::sqrt(d);
    l(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = c(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / root;
    }
  }
  return false;
}

}  // namespace

SampledCorrelation sample_correlation_counted(int size, double lo, double hi, std::uint64_t seed,
                                              int max_tries) {
  if (size < 1) fail(ErrorKind::UnsupportedSize, "size must be positive");
  if (!(lo >= -1.0 && lo < hi && hi <= 1.0)) {
    std::ostringstream msg;
    msg << "sampling range [" << lo << ", " << hi << "] must satisfy -1 <= lo < hi <= 1";
    fail(ErrorKind::InvalidArgument, msg.str());
  }
  if (max_tries < 1) fail(ErrorKind::InvalidArgument, "max_tries must be at least 1");

  Rng rng(seed);
  Matrix candidate = Matrix::Identity(size, size);
  std::vector<double> work;
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        const double v = lo + (hi - lo) * uniform01(rng);
        candidate(i, j) = v;
        candidate(j, i) = v;
      }
    }
    if (clearly_indefinite(candidate, 1e-8, work)) continue;
    if (smallest_eigenvalue(candidate) >= -kPsdTolerance)
      return {CorrelationMatrix(candidate), attempt};
  }
  std::ostringstream msg;
  msg << "no PSD draw for size " << size << " on [" << lo << ", " << hi << "] after " << max_tries
      << " tries";
  fail(ErrorKind::RejectionBudgetExhausted, msg.str());
}

CorrelationMatrix sample_correlation(int size, double lo, double hi, std::uint64_t seed,
                                     int max_tries) {
  return sample_correlation_counted(size, lo, hi, seed, max_tries).matrix;
}

}  // namespace taskorder
