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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "taskorder/analytic.hpp"
#include "taskorder/error.hpp"
#include "taskorder/graph.hpp"
#include "taskorder/perturbation.hpp"

using namespace taskorder;
using Catch::Matchers::WithinAbs;

namespace {

Matrix constant_c(int p, double m) {
  Matrix c = Matrix::Constant(p, p, m);
  c.diagonal().setOnes();
  return c;
}

// Position part at rho_o = 1 in its original three-term form, 1-based mu < nu,
// doubled for the symmetric direction.
double g_plus_reference(double m, int p, int mu, int nu) {
  const double q = 1.0 - m;
  return 2.0 * (-std::pow(q, p + mu - 1) - std::pow(q, p + nu - 1) + (3.0 - m) / (2.0 - m) * std::pow(q, mu + nu - 1));
}

Matrix random_residual(int p, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix d = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) d(i, j) = d(j, i) = u(rng);
  return d;
}

}  // namespace

TEST_CASE("decompose examples", "[perturbation]") {
  const auto flat = decompose(CorrelationMatrix::uniform(4, 0.3), 1.0);
  CHECK_THAT(flat.m, WithinAbs(0.3, 1e-15));
  CHECK(flat.delta_m.cwiseAbs().maxCoeff() < 1e-15);

  const auto chain = decompose(graph_similarity({GraphKind::Chain, 3, 0.5}), 1.0);
  CHECK_THAT(chain.m, WithinAbs(5.0 / 12.0, 1e-15));
  CHECK_THAT(chain.delta_m(0, 1), WithinAbs(1.0 / 12.0, 1e-15));
  CHECK_THAT(chain.delta_m(1, 2), WithinAbs(1.0 / 12.0, 1e-15));
  CHECK_THAT(chain.delta_m(0, 2), WithinAbs(-1.0 / 6.0, 1e-15));
  CHECK((chain.c_in_entries() - graph_similarity({GraphKind::Chain, 3, 0.5}).entries()).cwiseAbs().maxCoeff() < 1e-15);

  const auto id = decompose(CorrelationMatrix::identity(3), 1.0);
  CHECK(id.m == 0.0);
  CHECK(id.delta_m.isZero());
}

TEST_CASE("alpha constants", "[perturbation]") {
  CHECK_THAT(alpha_minus(0.5, 7), WithinAbs(-0.9322916666666666, 1e-12));
  CHECK_THAT(alpha_plus(0.5, 7), WithinAbs(1.5 / 2.5 / 128.0, 1e-15));
  CHECK_THAT(mean_decay(0.0, 7), WithinAbs(1.0, 1e-15));
  // mean_decay is the average of (1-m)^mu over mu = 1..P.
  double avg = 0.0;
  for (int mu = 1; mu <= 6; ++mu) avg += std::pow(0.7, mu) / 6.0;
  CHECK_THAT(mean_decay(0.3, 6), WithinAbs(avg, 1e-15));
  CHECK_THROWS_AS(g_functions(1.0, 1.0, 5), Error);
}

TEST_CASE("sign of the first-row coefficients", "[perturbation]") {
  const auto g = g_functions(0.3, 1.0, 7);
  CHECK(g.g(0, 1) > 0.0);
  CHECK(g.g(0, 6) < 0.0);
}

TEST_CASE("coefficients match symmetric finite differences", "[perturbation][property]") {
  const double h = 1e-5;
  for (double m : {0.1, 0.3, 0.5, 0.7}) {
    for (double rho_o : {0.5, 1.0}) {
      for (int p : {3, 5, 7}) {
        const auto g = g_functions(m, rho_o, p);
        const Matrix c_out = constant_c(p, rho_o);
        const Matrix base = constant_c(p, m);
        for (int i = 0; i < p; ++i) {
          for (int j = i + 1; j < p; ++j) {
            const double fd = oracle::symmetric_difference(
                base, i, j, h, [&](const Matrix& c) { return oracle::final_error(c, c_out); });
            INFO("m=" << m << " rho_o=" << rho_o << " P=" << p << " pair " << i + 1 << "," << j + 1);
            CHECK(std::abs(g.g(i, j) - fd) <= 1e-3 * std::abs(fd) + 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("position and gap parts at rho_o = 1", "[perturbation]") {
  for (double m : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (int p : {2, 5, 7, 10}) {
      const auto g = g_functions(m, 1.0, p);
      const Matrix sum = g.g_plus_part + g.g_minus_part;
      CHECK((g.g - sum).cwiseAbs().maxCoeff() <= 1e-12);
      for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
          CHECK_THAT(g.g_plus_part(i, j), WithinAbs(g_plus_reference(m, p, i + 1, j + 1), 1e-12));
          CHECK_THAT(g.g_minus_part(i, j), WithinAbs(2.0 * alpha_minus(m, p) * std::pow(1.0 - m, p - (j - i)), 1e-12));
        }
      }
      CHECK((g_plus_typicality_form(m, p) - g.g_plus_part).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((g_plus_alpha_form(m, p) - g.g_plus_part).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("position part decreases in both indices", "[perturbation][property]") {
  for (int k = 1; k <= 19; ++k) {
    const double m = k / 20.0;
    for (int p = 2; p <= 10; ++p) {
      const Matrix gp = g_functions(m, 1.0, p).g_plus_part;
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
          if (j + 1 < p) CHECK(gp(i, j + 1) < gp(i, j));
          if (i + 1 < j) CHECK(gp(i + 1, j) < gp(i, j));
        }
    }
  }
}

TEST_CASE("alpha minus changes sign once at seven tasks", "[perturbation][property]") {
  // Root of -1 + q^7 (7m/q + (3-m)/(2-m)) found by bisection in double precision.
  const double root = 0.12378594555545168;
  CHECK(alpha_minus(root - 1e-9, 7) > 0.0);
  CHECK(alpha_minus(root + 1e-9, 7) < 0.0);
  for (int k = 0; k <= 900; ++k) {
    const double m = 0.05 + 0.9 * (k + 0.5) / 901.0;
    if (m > root + 1e-9) CHECK(alpha_minus(m, 7) < 0.0);
    if (m < root - 1e-9) CHECK(alpha_minus(m, 7) > 0.0);
  }
  CHECK_THAT(alpha_minus(0.3, 400), WithinAbs(-1.0, 1e-12));
}

TEST_CASE("gap contribution identity", "[perturbation][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 2 + trial % 8;
    const double m = 0.05 + 0.9 * (trial % 10) / 10.0;
    const Matrix d = random_residual(p, 0.05, rng);
    const auto g = g_functions(m, 1.0, p);
    CHECK_THAT(weighted_pair_sum(g.g_minus_part, d), WithinAbs(gap_contribution(m, p, d), 1e-12));
  }
}

TEST_CASE("linearized error", "[perturbation]") {
  PerturbationSpec flat{4, 0.3, 1.0, Matrix::Zero(4, 4)};
  CHECK_THAT(linearized_error(flat).value(), WithinAbs(final_error(flat.baseline_spec()).value(), 1e-15));

  for (double sign : {1.0, -1.0}) {
    PerturbationSpec pert{3, 0.4, 1.0, Matrix::Zero(3, 3)};
    pert.delta_m(0, 1) = pert.delta_m(1, 0) = sign * 1e-4;
    const double exact = oracle::final_error(pert.c_in_entries(), constant_c(3, 1.0));
    CHECK(std::abs(linearized_error(pert).value() - exact) <= 1e-8);
  }

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    PerturbationSpec pert{7, 0.3, 1.0, random_residual(7, 1e-3, rng)};
    const double exact = final_error(pert.spec()).value();
    const double norm2 = pert.delta_m.squaredNorm();
    CHECK(std::abs(linearized_error(pert).value() - exact) <= 10.0 * norm2);
  }
}

TEST_CASE("typicality", "[perturbation]") {
  for (double t : typicality(CorrelationMatrix::uniform(5, 0.4))) CHECK(std::abs(t) < 1e-15);
  const auto t3 = typicality(graph_similarity({GraphKind::Chain, 3, 0.5}));
  CHECK(t3[1] > t3[0]);
  CHECK_THAT(t3[0], WithinAbs(t3[2], 1e-15));
  for (int k = 1; k <= 9; ++k) {
    const auto t5 = typicality(graph_similarity({GraphKind::Chain, 5, k / 10.0}));
    for (int i : {0, 1, 3, 4}) CHECK(t5[2] > t5[i]);
  }
  // Same ranking as the raw off-diagonal column sums.
  const auto c = sample_correlation(6, -0.5, 1.0, 8, 10000000);
  const auto t = typicality(c);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double si = c.entries().col(i).sum() - 1.0;
      const double sj = c.entries().col(j).sum() - 1.0;
      CHECK((t[i] < t[j]) == (si < sj));
    }
}

TEST_CASE("hamiltonian length", "[perturbation]") {
  const auto ones = CorrelationMatrix::uniform(4, 1.0);
  CHECK(hamiltonian_length(ones, Ordering::parse("2>4>1>3")) == 0.0);
  const auto chain = graph_similarity({GraphKind::Chain, 3, 0.5});
  CHECK_THAT(hamiltonian_length(chain, Ordering::parse("A>B>C")), WithinAbs(1.0, 1e-15));
  CHECK_THAT(hamiltonian_length(chain, Ordering::parse("A>C>B")), WithinAbs(1.25, 1e-15));
  CHECK_THROWS_AS(hamiltonian_length(chain, Ordering::identity(2)), Error);
}
