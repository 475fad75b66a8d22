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

#include "taskorder/perturbation.hpp"

#include <cmath>
#include <sstream>

#include "taskorder/error.hpp"

namespace taskorder {
namespace {

void require_m(double m) {
  if (!(m > -1.0 && m < 1.0)) {
    std::ostringstream msg;
    msg << "mean similarity m=" << m << " outside (-1, 1)";
    fail(ErrorKind::MOutOfRange, msg.str());
  }
}

void require_tasks(int tasks) {
  if (tasks < 2) fail(ErrorKind::UnsupportedSize, "perturbation analysis needs at least 2 tasks");
}

// The symmetric-direction derivative counts each unordered pair twice.
constexpr double kPairScale = 2.0;

}  // namespace

Matrix PerturbationSpec::c_in_entries() const {
  Matrix c = Matrix::Constant(tasks, tasks, m) + delta_m;
  c.diagonal().setOnes();
  return c;
}

TaskSetSpec PerturbationSpec::spec() const {
  return TaskSetSpec(CorrelationMatrix::validate(c_in_entries()),
                     CorrelationMatrix::uniform(tasks, rho_o));
}

TaskSetSpec PerturbationSpec::baseline_spec() const {
  return TaskSetSpec(CorrelationMatrix::uniform(tasks, m), CorrelationMatrix::uniform(tasks, rho_o));
}

PerturbationSpec decompose(const CorrelationMatrix& c, double rho_o) {
  const int p = c.size();
  require_tasks(p);
  PerturbationSpec out;
  out.tasks = p;
  out.m = c.mean_off_diagonal();
  out.rho_o = rho_o;
  out.delta_m = c.entries() - Matrix::Constant(p, p, out.m);
  out.delta_m.diagonal().setZero();
  return out;
}

GFunctions::GFunctions(double m, double rho_o, int tasks)
    : m_(m), q_(1.0 - m), rho_o_(rho_o), tasks_(tasks) {
  require_m(m);
  coupled_ = (1.0 - rho_o_) * m_ / (2.0 - m_);
  direct_ = rho_o_ - coupled_;
}

double GFunctions::origin(int k) const {
  const int p = tasks_;
  return coupled_ * std::pow(q_, p - k) - direct_ * std::pow(q_, p + k - 1);
}

double GFunctions::sum(int s) const {
  const int p = tasks_;
  const double tail = p * m_ + 2.0 * q_ - q_ * q_ / (2.0 - m_);
  return direct_ * (3.0 - m_) / (2.0 - m_) * std::pow(q_, s - 1) -
         coupled_ * tail * std::pow(q_, 2 * p - s);
}

double GFunctions::gap(int d) const {
  const int p = tasks_;
  const double far = direct_ * -alpha_minus(m_, p) - coupled_ / q_;
  return coupled_ / (2.0 - m_) * std::pow(q_, d - 1) - far * std::pow(q_, p - d);
}

double alpha_plus(double m, int tasks) {
  require_m(m);
  return (2.0 - m) / (3.0 - m) * std::pow(1.0 - m, tasks);
}

double alpha_minus(double m, int tasks) {
  require_m(m);
  const double q = 1.0 - m;
  return -1.0 + std::pow(q, tasks) * (m * tasks / q + (3.0 - m) / (2.0 - m));
}

double mean_decay(double m, int tasks) {
  require_m(m);
  if (m == 0.0) return 1.0;
  const double q = 1.0 - m;
  return (q - std::pow(q, tasks + 1)) / (m * tasks);
}

GCoefficients g_functions(double m, double rho_o, int tasks) {
  require_m(m);
  require_tasks(tasks);
  const GFunctions gf(m, rho_o, tasks);
  GCoefficients out;
  out.tasks = tasks;
  out.m = m;
  out.rho_o = rho_o;
  out.g = Matrix::Zero(tasks, tasks);
  out.g_plus_part = Matrix::Zero(tasks, tasks);
  out.g_minus_part = Matrix::Zero(tasks, tasks);
  for (int i = 0; i < tasks; ++i) {
    for (int j = i + 1; j < tasks; ++j) {
      const int mu = i + 1;
      const int nu = j + 1;
      const double position = gf.origin(mu) + gf.origin(nu) + gf.sum(mu + nu);
      const double gap = gf.gap(nu - mu);
      out.g_plus_part(i, j) = kPairScale * position;
      out.g_minus_part(i, j) = kPairScale * gap;
      out.g(i, j) = kPairScale * (position + gap);
    }
  }
  out.alpha_plus = alpha_plus(m, tasks);
  out.alpha_minus = alpha_minus(m, tasks);
  return out;
}

Matrix g_plus_typicality_form(double m, int tasks) {
  require_tasks(tasks);
  const double q = 1.0 - m;
  const double k = (3.0 - m) / ((2.0 - m) * q);
  const double gbar = mean_decay(m, tasks);
  const double linear = k * gbar - std::pow(q, tasks - 1);
  Matrix out = Matrix::Zero(tasks, tasks);
  for (int i = 0; i < tasks; ++i) {
    for (int j = i + 1; j < tasks; ++j) {
      const double xi = std::pow(q, i + 1);
      const double xj = std::pow(q, j + 1);
      out(i, j) = kPairScale * (linear * (xi + xj) + k * (xi - gbar) * (xj - gbar) - k * gbar * gbar);
    }
  }
  return out;
}

Matrix g_plus_alpha_form(double m, int tasks) {
  require_tasks(tasks);
  const double q = 1.0 - m;
  const double k = (3.0 - m) / ((2.0 - m) * q);
  const double ap = alpha_plus(m, tasks);
  Matrix out = Matrix::Zero(tasks, tasks);
  for (int i = 0; i < tasks; ++i) {
    for (int j = i + 1; j < tasks; ++j) {
      const double xi = std::pow(q, i + 1);
      const double xj = std::pow(q, j + 1);
      out(i, j) = kPairScale * (k * (xi - ap) * (xj - ap) - ap * std::pow(q, tasks - 1));
    }
  }
  return out;
}

double weighted_pair_sum(const Matrix& coeff, const Matrix& delta_m) {
  if (coeff.rows() != delta_m.rows() || coeff.cols() != delta_m.cols())
    fail(ErrorKind::SizeMismatch, "coefficient and residual matrices differ in shape");
  double total = 0.0;
  for (Eigen::Index i = 0; i < coeff.rows(); ++i)
    for (Eigen::Index j = i + 1; j < coeff.cols(); ++j) total += coeff(i, j) * delta_m(i, j);
  return total;
}

double gap_contribution(double m, int tasks, const Matrix& delta_m) {
  if (delta_m.rows() != tasks || delta_m.cols() != tasks)
    fail(ErrorKind::SizeMismatch, "residual matrix does not match task count");
  const double q = 1.0 - m;
  double total = 0.0;
  for (int d = 1; d < tasks; ++d) {
    double diagonal = 0.0;
    for (int i = 0; i + d < tasks; ++i) diagonal += delta_m(i, i + d);
    total += std::pow(q, tasks - d) * diagonal;
  }
  return kPairScale * alpha_minus(m, tasks) * total;
}

ErrorValue linearized_error(const PerturbationSpec& pert) {
  if (pert.delta_m.rows() != pert.tasks || pert.delta_m.cols() != pert.tasks)
    fail(ErrorKind::SizeMismatch, "residual matrix does not match task count");
  const double baseline = final_error(pert.baseline_spec()).value();
  const GCoefficients coeff = g_functions(pert.m, pert.rho_o, pert.tasks);
  return ErrorValue(baseline + weighted_pair_sum(coeff.g, pert.delta_m));
}

std::vector<double> typicality(const Matrix& similarity) {
  const Eigen::Index p = similarity.rows();
  if (p < 2 || similarity.cols() != p)
    fail(ErrorKind::UnsupportedSize, "typicality needs a square matrix with at least 2 tasks");
  double mean = 0.0;
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j) mean += similarity(i, j);
  mean /= 0.5 * static_cast<double>(p * (p - 1));
  std::vector<double> out(p, 0.0);
  for (Eigen::Index mu = 0; mu < p; ++mu) {
    double col = 0.0;
    for (Eigen::Index nu = 0; nu < p; ++nu)
      if (nu != mu) col += similarity(nu, mu) - mean;
    out[mu] = col;
  }
  return out;
}

double hamiltonian_length(const Matrix& similarity, const Ordering& ord) {
  if (similarity.rows() != ord.size() || similarity.cols() != ord.size()) {
    std::ostringstream msg;
    msg << "ordering has " << ord.size() << " tasks but matrix is " << similarity.rows() << "x"
        << similarity.cols();
    fail(ErrorKind::SizeMismatch, msg.str());
  }
  double length = 0.0;
  for (int k = 0; k + 1 < ord.size(); ++k) length += 1.0 - similarity(ord[k], ord[k + 1]);
  return length;
}

}  // namespace taskorder
