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

#include "taskorder/similarity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "taskorder/error.hpp"
#include "taskorder/io.hpp"

namespace taskorder {

TransferErrorTable::TransferErrorTable(Matrix transfer, Matrix baseline)
    : transfer_(std::move(transfer)), baseline_(std::move(baseline)) {
  if (transfer_.rows() != transfer_.cols() || transfer_.rows() == 0)
    fail(ErrorKind::ShapeMismatch, "transfer matrix must be square and nonempty");
  if (baseline_.rows() != transfer_.rows() || baseline_.cols() != transfer_.cols())
    fail(ErrorKind::ShapeMismatch, "baseline and transfer matrices differ in shape");
  for (Eigen::Index i = 0; i < transfer_.rows(); ++i) {
    for (Eigen::Index j = 0; j < transfer_.cols(); ++j) {
      std::ostringstream where;
      where << "(" << i + 1 << ", " << j + 1 << ")";
      if (!(transfer_(i, j) >= 0.0) || !std::isfinite(transfer_(i, j)))
        fail(ErrorKind::NegativeTransferError, "transfer entry " + where.str() + " is negative or not finite");
      if (!(baseline_(i, j) > 0.0) || !std::isfinite(baseline_(i, j)))
        fail(ErrorKind::NonpositiveBaseline, "baseline entry " + where.str() + " is not positive");
    }
  }
}

SimilarityMatrix estimate_similarity(const TransferErrorTable& table, double clamp_lo, double clamp_hi) {
  if (!(clamp_lo < clamp_hi)) fail(ErrorKind::InvalidArgument, "clamp_lo must be below clamp_hi");
  const int p = table.tasks();
  SimilarityMatrix s;
  s.rho = Matrix::Identity(p, p);
  s.raw = Matrix::Identity(p, p);
  s.clamped = Eigen::MatrixXi::Zero(p, p);
  s.asymmetry = Matrix::Zero(p, p);
  const Matrix& t = table.transfer();
  const Matrix& b = table.baseline();
  for (int a = 0; a < p; ++a) {
    for (int c = a + 1; c < p; ++c) {
      const double forward = std::sqrt(t(a, c) / b(a, c));
      const double backward = std::sqrt(t(c, a) / b(c, a));
      const double raw = 1.0 - 0.5 * (forward + backward);
      const double value = std::clamp(raw, clamp_lo, clamp_hi);
      const int flag = value != raw ? 1 : 0;
      s.raw(a, c) = s.raw(c, a) = raw;
      s.rho(a, c) = s.rho(c, a) = value;
      s.clamped(a, c) = s.clamped(c, a) = flag;
      s.asymmetry(a, c) = s.asymmetry(c, a) = std::abs(forward - backward);
    }
  }
  return s;
}

TransferErrorTable load_table(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) fail(ErrorKind::ParseError, "transfer table must be a JSON object");
  for (const char* key : {"transfer", "baseline"})
    if (!j.contains(key)) fail(ErrorKind::ParseError, std::string("missing \"") + key + "\" matrix");
  return TransferErrorTable(matrix_from_json(j.at("transfer")), matrix_from_json(j.at("baseline")));
}

TransferErrorTable load_table_csv(std::string_view transfer_csv, std::string_view baseline_csv) {
  return TransferErrorTable(matrix_from_csv(transfer_csv), matrix_from_csv(baseline_csv));
}

std::optional<CorrelationMatrix> as_correlation(const SimilarityMatrix& s) {
  try {
    return CorrelationMatrix::validate(s.rho);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotPSD) return std::nullopt;
    throw;
  }
}

CorrelationMatrix project_to_correlation(const Matrix& symmetric) {
  const Matrix sym = 0.5 * (symmetric + symmetric.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
  Matrix psd = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  const Vector d = psd.diagonal();
  if ((d.array() <= kPsdTolerance).any())
    fail(ErrorKind::NotPSD, "projection left a task with zero variance");
  const Vector inv = d.cwiseSqrt().cwiseInverse();
  Matrix out = inv.asDiagonal() * psd * inv.asDiagonal();
  out = (0.5 * (out + out.transpose())).eval();
  out = out.cwiseMax(-1.0).cwiseMin(1.0);
  out.diagonal().setOnes();
  return CorrelationMatrix::validate(out);
}

TransferErrorTable theory_transfer_table(const TaskSetSpec& spec) {
  const int p = spec.tasks();
  const Matrix& c_in = spec.c_in().entries();
  const Matrix& c_out = spec.c_out().entries();
  Matrix transfer(p, p);
  for (int nu = 0; nu < p; ++nu) {
    for (int mu = 0; mu < p; ++mu) {
      const double r = c_in(nu, mu);
      transfer(nu, mu) = std::max(0.0, 1.0 - 2.0 * c_out(nu, mu) * r + r * r);
    }
  }
  return TransferErrorTable(transfer, Matrix::Ones(p, p));
}

}  // namespace taskorder
