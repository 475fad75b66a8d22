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

#include <vector>

#include "taskorder/analytic.hpp"
#include "taskorder/correlation.hpp"
#include "taskorder/task_spec.hpp"

namespace taskorder {

/// C_in split into a uniform part m and a symmetric zero-diagonal residual,
/// with uniform output correlation rho_o:
///   C_in(i, j) = m + delta_m(i, j) for i != j,  C_out(i, j) = rho_o for i != j.
struct PerturbationSpec {
  int tasks = 0;
  double m = 0.0;
  double rho_o = 1.0;
  Matrix delta_m;

  Matrix c_in_entries() const;
  /// The full instance; throws if the reconstruction is not a valid correlation.
  TaskSetSpec spec() const;
  /// The unperturbed (m, rho_o) instance.
  TaskSetSpec baseline_spec() const;
};

/// m is the arithmetic mean of the off-diagonal entries. Requires size >= 2.
PerturbationSpec decompose(const CorrelationMatrix& c, double rho_o);

/// The three scalar profiles whose sums make up the order coefficients, for
/// a baseline (m, rho_o) at task count P. Indices are 1-based positions:
/// g_o(k) for one position, g_+(s) for a position sum, g_-(d) for a gap.
class GFunctions {
 public:
  GFunctions(double m, double rho_o, int tasks);

  double origin(int k) const;
  double sum(int s) const;
  double gap(int d) const;

 private:
  double m_;
  double q_;  // 1 - m
  double rho_o_;
  int tasks_;
  double coupled_;    // (1 - rho_o) m / (2 - m)
  double direct_;     // rho_o - coupled_
};

/// Sensitivities of the final error to each pairwise residual.
///
/// `g(mu, nu)` (0-based, mu < nu) is d eps / d delta_m(mu, nu) taken along the
/// symmetric direction (both (mu, nu) and (nu, mu) move). That derivative is
/// twice g_o(mu+1) + g_o(nu+1) + g_+(mu+nu+2) + g_-(nu-mu), so every matrix
/// here carries the factor 2.
///
/// `g_plus_part` collects the position-only terms (g_o and g_+) and
/// `g_minus_part` the gap term g_-. At rho_o = 1 they reduce to
///   G+ = 2[-(1-m)^(P+mu-1) - (1-m)^(P+nu-1) + (3-m)/(2-m) (1-m)^(mu+nu-1)]
///   G- = 2 alpha_minus (1-m)^(P-(nu-mu))
/// with 1-based mu, nu. All three matrices are strictly upper triangular.
struct GCoefficients {
  int tasks = 0;
  double m = 0.0;
  double rho_o = 1.0;
  Matrix g;
  Matrix g_plus_part;
  Matrix g_minus_part;
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
};

/// Throws MOutOfRange unless -1 < m < 1; requires tasks >= 2.
GCoefficients g_functions(double m, double rho_o, int tasks);

double alpha_plus(double m, int tasks);
double alpha_minus(double m, int tasks);

/// Mean of (1-m)^mu over mu = 1..P, in closed form (1 at m = 0).
double mean_decay(double m, int tasks);

/// G+ at rho_o = 1 rewritten around gbar = mean_decay(m, P): a term linear in
/// (1-m)^mu + (1-m)^nu plus a product of deviations from gbar. Same values as
/// g_plus_part.
Matrix g_plus_typicality_form(double m, int tasks);

/// G+ at rho_o = 1 in the alpha_plus factored form.
Matrix g_plus_alpha_form(double m, int tasks);

/// Sum over mu < nu of coeff(mu, nu) * delta_m(mu, nu).
double weighted_pair_sum(const Matrix& coeff, const Matrix& delta_m);

/// The G- contribution regrouped by gap d:
///   2 alpha_minus sum_d (1-m)^(P-d) sum_mu delta_m(mu, mu+d).
double gap_contribution(double m, int tasks, const Matrix& delta_m);

/// Baseline error plus the first-order correction.
ErrorValue linearized_error(const PerturbationSpec& pert);

/// Per-task residual similarity: column sums of delta_m. Ranking is the same
/// as for the raw off-diagonal column sums of the similarity matrix.
std::vector<double> typicality(const Matrix& similarity);
inline std::vector<double> typicality(const CorrelationMatrix& c) { return typicality(c.entries()); }

/// Sum of 1 - C(ord[k], ord[k+1]) along the ordering.
double hamiltonian_length(const Matrix& similarity, const Ordering& ord);
inline double hamiltonian_length(const CorrelationMatrix& c, const Ordering& ord) {
  return hamiltonian_length(c.entries(), ord);
}

}  // namespace taskorder
