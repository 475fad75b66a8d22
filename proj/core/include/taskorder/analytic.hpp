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

#include <span>

#include "taskorder/correlation.hpp"
#include "taskorder/task_spec.hpp"

namespace taskorder {

/// Summed final error over all tasks (each task error already divided by
/// the output width). Round-off negatives within 1e-12 are clamped to 0.
class ErrorValue {
 public:
  static constexpr double kClampTolerance = 1e-12;

  ErrorValue() = default;
  /// Throws std::domain_error for values below -kClampTolerance or NaN.
  explicit ErrorValue(double value);

  double value() const { return value_; }
  operator double() const { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  double value_ = 0.0;
};

/// Zeros on and below the diagonal. Row i holds the similarities of the
/// i-th trained task to every task trained after it.
class StrictUpperMatrix {
 public:
  explicit StrictUpperMatrix(const CorrelationMatrix& c);

  /// Throws InvalidArgument if any entry on or below the diagonal is nonzero.
  static StrictUpperMatrix from_entries(const Matrix& entries);
  static StrictUpperMatrix constant(int size, double m);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  explicit StrictUpperMatrix(Matrix entries) : entries_(std::move(entries)) {}

  Matrix entries_;
};

inline StrictUpperMatrix strict_upper(const CorrelationMatrix& c) { return StrictUpperMatrix(c); }

/// (I + M)^{-1} by column-wise back-substitution. I + M is unit upper
/// triangular, so this never fails.
Matrix unit_upper_inverse(const StrictUpperMatrix& m);

/// Closed-form (I + M)^{-1} for a constant strict upper triangle m:
/// entries delta_ij - m [j > i] (1 - m)^(j - i - 1). Requires -1 < m < 1.
Matrix lemma1_inverse(double m, int size);

/// Symmetric square root through the eigendecomposition; eigenvalues in
/// [-kPsdTolerance, 0) are clamped to 0, anything lower throws NotPSD.
Matrix psd_sqrt(const Matrix& symmetric);
inline Matrix psd_sqrt(const CorrelationMatrix& c) { return psd_sqrt(c.entries()); }

/// Asymptotic expected final error of sequential training in index order:
///   || C_out^{1/2} (I - (I + U)^{-1} C_in) ||_F^2,  U = strict_upper(C_in).
ErrorValue final_error(const TaskSetSpec& spec);

/// The equivalent form || C_out^{1/2} (I + U)^{-1} U^T ||_F^2.
ErrorValue final_error_transpose_form(const TaskSetSpec& spec);

/// final_error(apply_ordering(spec, ord)).
ErrorValue ordered_error(const TaskSetSpec& spec, const Ordering& ord);

/// Repeated evaluation of ordered errors for one spec. Caches C_out^{1/2}
/// and permutes it instead of re-factorizing per ordering.
class OrderEvaluator {
 public:
  explicit OrderEvaluator(const TaskSetSpec& spec);

  int tasks() const { return static_cast<int>(c_in_.rows()); }
  double operator()(std::span<const int> perm) const;
  ErrorValue error(const Ordering& ord) const;

 private:
  Matrix c_in_;
  Matrix sqrt_out_;
};

}  // namespace taskorder
