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

#include <optional>
#include <string_view>

#include "taskorder/correlation.hpp"
#include "taskorder/task_spec.hpp"

namespace taskorder {

/// Measured zero-shot transfer. transfer(nu, mu) is the error on task mu of
/// a model trained only on task nu; baseline(nu, mu) is the matching
/// label-shuffled chance error.
class TransferErrorTable {
 public:
  /// Throws ShapeMismatch, NegativeTransferError or NonpositiveBaseline.
  TransferErrorTable(Matrix transfer, Matrix baseline);

  int tasks() const { return static_cast<int>(transfer_.rows()); }
  const Matrix& transfer() const { return transfer_; }
  const Matrix& baseline() const { return baseline_; }

 private:
  Matrix transfer_;
  Matrix baseline_;
};

/// Pairwise similarity estimate. Symmetric with unit diagonal but not
/// necessarily positive semi-definite.
struct SimilarityMatrix {
  Matrix rho;
  Matrix raw;         // before clamping
  Eigen::MatrixXi clamped;
  /// |sqrt(ratio nu->mu) - sqrt(ratio mu->nu)|, the disagreement between
  /// the two directional estimates.
  Matrix asymmetry;

  int tasks() const { return static_cast<int>(rho.rows()); }
  bool any_clamped() const { return clamped.any(); }
};

/// rho(A, B) = 1 - (sqrt(T(A,B)/S(A,B)) + sqrt(T(B,A)/S(B,A))) / 2, clamped
/// into [clamp_lo, clamp_hi] with the clamped entries flagged.
SimilarityMatrix estimate_similarity(const TransferErrorTable& table, double clamp_lo = -1.0,
                                     double clamp_hi = 1.0);

/// JSON object {"transfer": [[...]], "baseline": [[...]]}.
TransferErrorTable load_table(std::string_view json_text);
/// Two matrix CSVs in the correlation CSV layout.
TransferErrorTable load_table_csv(std::string_view transfer_csv, std::string_view baseline_csv);

/// The estimate as a validated correlation, or nothing if it is not PSD.
std::optional<CorrelationMatrix> as_correlation(const SimilarityMatrix& s);

/// Nearest-looking correlation: negative eigenvalues set to 0, then the
/// diagonal rescaled back to 1. An approximation, only used when asked for.
CorrelationMatrix project_to_correlation(const Matrix& symmetric);

/// Transfer table predicted by the linear teacher-student model: a student
/// fit to task nu alone scores 1 - 2 C_out C_in + C_in^2 on task mu, and the
/// untrained error 1 serves as the chance baseline.
TransferErrorTable theory_transfer_table(const TaskSetSpec& spec);

}  // namespace taskorder
