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
#include <span>

#include <Eigen/Dense>

namespace taskorder {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Acceptance tolerance for positive semi-definiteness, applied to the
/// smallest eigenvalue. Shared by validation, sampling and psd_sqrt.
inline constexpr double kPsdTolerance = 1e-10;

struct SampledCorrelation;

/// Symmetric, unit-diagonal, PSD matrix with entries in [-1, 1]. Only
/// obtainable through validation, so holding one means the invariants hold.
class CorrelationMatrix {
 public:
  /// Checks every invariant; throws Error with NotSymmetric, NotUnitDiagonal,
  /// EntryOutOfRange or NotPSD (the message carries the smallest eigenvalue).
  static CorrelationMatrix validate(const Matrix& entries);

  static CorrelationMatrix identity(int size);

  /// Ones on the diagonal, `value` everywhere else. value = 1 gives the
  /// all-ones matrix used for perfectly shared outputs.
  static CorrelationMatrix uniform(int size, double value);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  /// Simultaneous row/column permutation, result(k, l) = (*this)(perm[k], perm[l]).
  /// `perm` must be a permutation of {0..size-1}; invariants carry over exactly.
  CorrelationMatrix permuted(std::span<const int> perm) const;

  /// Arithmetic mean of the off-diagonal entries (0 for size 1).
  double mean_off_diagonal() const;

  bool operator==(const CorrelationMatrix& other) const { return entries_ == other.entries_; }

 private:
  friend SampledCorrelation sample_correlation_counted(int, double, double, std::uint64_t, int);
  explicit CorrelationMatrix(Matrix entries) : entries_(std::move(entries)) {}

  Matrix entries_;
};

inline CorrelationMatrix validate_correlation(const Matrix& entries) {
  return CorrelationMatrix::validate(entries);
}

double smallest_eigenvalue(const Matrix& symmetric);

inline constexpr int kDefaultMaxTries = 10000;

/// Rejection sampler: strictly-upper entries i.i.d. uniform on [lo, hi],
/// mirrored, unit diagonal, redrawn until the smallest eigenvalue clears
/// -kPsdTolerance. Deterministic in `seed`.
CorrelationMatrix sample_correlation(int size, double lo, double hi, std::uint64_t seed,
                                     int max_tries = kDefaultMaxTries);

/// Same sampler, also reporting how many candidates were drawn.
struct SampledCorrelation {
  CorrelationMatrix matrix;
  int tries;
};
SampledCorrelation sample_correlation_counted(int size, double lo, double hi, std::uint64_t seed,
                                              int max_tries = kDefaultMaxTries);

}  // namespace taskorder
