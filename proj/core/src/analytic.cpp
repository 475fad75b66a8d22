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

#include "taskorder/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "taskorder/error.hpp"

namespace taskorder {
namespace {

Matrix back_substitute_unit_upper(const Matrix& m) {
  const Eigen::Index p = m.rows();
  Matrix x = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    x(j, j) = 1.0;
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      double s = 0.0;
      for (Eigen::Index k = i + 1; k <= j; ++k) s += m(i, k) * x(k, j);
      x(i, j) = -s;
    }
  }
  return x;
}

double residual_norm(const Matrix& c_in, const Matrix& sqrt_out) {
  const Eigen::Index p = c_in.rows();
  const Matrix upper = c_in.triangularView<Eigen::StrictlyUpper>();
  const Matrix inv = back_substitute_unit_upper(upper);
  const Matrix residual = Matrix::Identity(p, p) - inv * c_in;
  return (sqrt_out * residual).squaredNorm();
}

}  // namespace

ErrorValue::ErrorValue(double value) {
  if (std::isnan(value) || value < -kClampTolerance) {
    std::ostringstream msg;
    msg << "error value " << value << " is negative beyond round-off";
    throw std::domain_error(msg.str());
  }
  value_ = value < 0.0 ? 0.0 : value;
}

StrictUpperMatrix::StrictUpperMatrix(const CorrelationMatrix& c)
    : entries_(c.entries().triangularView<Eigen::StrictlyUpper>()) {}

StrictUpperMatrix StrictUpperMatrix::from_entries(const Matrix& entries) {
  if (entries.rows() != entries.cols())
    fail(ErrorKind::ShapeMismatch, "strict upper matrix must be square");
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (entries(i, j) != 0.0) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") on or below the diagonal is nonzero";
        fail(ErrorKind::InvalidArgument, msg.str());
      }
    }
  }
  return StrictUpperMatrix(entries);
}

StrictUpperMatrix StrictUpperMatrix::constant(int size, double m) {
  Matrix e = Matrix::Constant(size, size, m).triangularView<Eigen::StrictlyUpper>();
  return StrictUpperMatrix(std::move(e));
}

Matrix unit_upper_inverse(const StrictUpperMatrix& m) {
  return back_substitute_unit_upper(m.entries());
}

Matrix lemma1_inverse(double m, int size) {
  if (!(m > -1.0 && m < 1.0)) {
    std::ostringstream msg;
    msg << "m=" << m << " outside (-1, 1)";
    fail(ErrorKind::MOutOfRange, msg.str());
  }
  Matrix x = Matrix::Identity(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) x(i, j) = -m * std::pow(1.0 - m, j - i - 1);
  return x;
}

Matrix psd_sqrt(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  Vector lambda = solver.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -kPsdTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "smallest eigenvalue " << lambda.minCoeff() << " below -" << kPsdTolerance;
    fail(ErrorKind::NotPSD, msg.str());
  }
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    lambda(k) = lambda(k) < kPsdTolerance ? 0.0 : std::sqrt(lambda(k));
  const Matrix& v = solver.eigenvectors();
  Matrix s = v * lambda.asDiagonal() * v.transpose();
  // Symmetrize away the last-bit asymmetry of the triple product.
  return 0.5 * (s + s.transpose());
}

ErrorValue final_error(const TaskSetSpec& spec) {
  return ErrorValue(residual_norm(spec.c_in().entries(), psd_sqrt(spec.c_out())));
}

ErrorValue final_error_transpose_form(const TaskSetSpec& spec) {
  const StrictUpperMatrix upper = strict_upper(spec.c_in());
  const Matrix inv = unit_upper_inverse(upper);
  return ErrorValue((psd_sqrt(spec.c_out()) * inv * upper.entries().transpose()).squaredNorm());
}

ErrorValue ordered_error(const TaskSetSpec& spec, const Ordering& ord) {
  return final_error(apply_ordering(spec, ord));
}

OrderEvaluator::OrderEvaluator(const TaskSetSpec& spec)
    : c_in_(spec.c_in().entries()), sqrt_out_(psd_sqrt(spec.c_out())) {}

double OrderEvaluator::operator()(std::span<const int> perm) const {
  const int p = tasks();
  if (static_cast<int>(perm.size()) != p) {
    std::ostringstream msg;
    msg << "ordering has " << perm.size() << " tasks but spec has " << p;
    fail(ErrorKind::SizeMismatch, msg.str());
  }
  Matrix c(p, p);
  Matrix s(p, p);
  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < p; ++l) {
      c(k, l) = c_in_(perm[k], perm[l]);
      s(k, l) = sqrt_out_(perm[k], perm[l]);
    }
  }
  return ErrorValue(residual_norm(c, s)).value();
}

ErrorValue OrderEvaluator::error(const Ordering& ord) const {
  return ErrorValue((*this)(ord.tasks()));
}

}  // namespace taskorder
