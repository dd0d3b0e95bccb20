// Copyright 2026 The qds Authors
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

#include <cmath>
#include <vector>

#include "qds/random.hpp"
#include "test_util.hpp"

using namespace qds;
using qds::test::diff;

TEST_SUITE("linalg") {

TEST_CASE("tolerances must lie strictly between 0 and 1e-2") {
  CHECK_NOTHROW(Tolerances{}.validate());
  CHECK_THROWS_AS((Tolerances{0.0, 1e-8, 1e-9}.validate()), Error);
  CHECK_THROWS_AS((Tolerances{1e-9, 0.5, 1e-9}.validate()), Error);
}

TEST_CASE("hermitian_eig sorts a diagonal matrix into permutation vectors") {
  const HermitianEig e = hermitian_eig(diag({3.0, 1.0, 2.0}));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(2.0));
  CHECK(e.values(2) == doctest::Approx(3.0));
  CHECK(std::abs(e.vectors(1, 0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(e.vectors(2, 1) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(e.vectors(0, 2) - Complex(1.0)) < 1e-14);
}

TEST_CASE("hermitian_eig of the identity") {
  const HermitianEig e = hermitian_eig(identity(2));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig of Pauli x") {
  Matrix x = zero(2);
  x(0, 1) = x(1, 0) = 1.0;
  const HermitianEig e = hermitian_eig(x);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(e.vectors(0, 0)) - s) < 1e-14);
  CHECK(std::abs(e.vectors(0, 0) + e.vectors(1, 0)) < 1e-14);
  CHECK(std::abs(e.vectors(0, 1) - e.vectors(1, 1)) < 1e-14);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Matrix a = zero(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(a), Error);
  try {
    hermitian_eig(a);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  Rng rng(3);
  const Tolerances tol;
  for (int d = 1; d <= 16; ++d) {
    const Matrix a = rng.hermitian(d);
    const HermitianEig e = hermitian_eig(a);
    const Matrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK(diff(a, back) <= 10 * tol.atol);
    CHECK(diff(e.vectors.adjoint() * e.vectors, identity(d)) <= tol.atol);
    for (int k = 1; k < d; ++k) CHECK(e.values(k - 1) <= e.values(k));
  }
}

TEST_CASE("matrix_exp examples") {
  CHECK(diff(matrix_exp(zero(3)), identity(3)) == 0.0);
  CHECK(diff(matrix_exp(diag({-1.0, 0.0})), diag({std::exp(-1.0), 1.0})) < 1e-15);
  Matrix n = zero(2);
  n(0, 1) = 1.0;
  Matrix expected = identity(2);
  expected(0, 1) = 1.0;
  CHECK(diff(matrix_exp(n), expected) < 1e-15);
}

TEST_CASE("matrix_exp matches the power series on small norms") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 4;
    Matrix a = rng.gaussian(d, d);
    a *= 0.3 / op_norm(a);
    Matrix term = identity(d);
    Matrix series = identity(d);
    for (int k = 1; k < 40; ++k) {
      term = term * a / static_cast<double>(k);
      series += term;
    }
    CHECK(diff(matrix_exp(a), series) <= 1e-12 * op_norm(series));
  }
}

TEST_CASE("matrix_exp semigroup law") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 5;
    Matrix a = rng.gaussian(d, d);
    a *= rng.uniform(0.1, 2.0) / op_norm(a);
    const double s = rng.uniform();
    const double t = rng.uniform();
    CHECK(diff(matrix_exp((s + t) * a), matrix_exp(s * a) * matrix_exp(t * a)) <= 1e-10);
  }
}

TEST_CASE("matrix_exp agrees with the spectral route on Hermitian input") {
  Rng rng(6);
  for (int d = 1; d <= 8; ++d) {
    const Matrix h = rng.hermitian(d);
    const Matrix a = matrix_exp(h);
    CHECK(diff(a, matrix_exp_hermitian(h)) <= 1e-11 * std::max(1.0, op_norm(a)));
  }
}

TEST_CASE("is_psd examples") {
  CHECK(is_psd(diag({0.0, 0.5})));
  CHECK_FALSE(is_psd(diag({-0.1, 1.0})));
  Vector psi(2);
  psi << 1.0, kI;
  psi /= std::sqrt(2.0);
  CHECK(is_psd(outer(psi, psi)));
  Matrix a = zero(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(is_psd(a), Error);
}

TEST_CASE("order_leq examples") {
  CHECK(order_leq(diag({1.0, 0.0}), diag({1.0, 0.3})));
  CHECK(order_leq(diag({0.2, 0.7}), diag({0.2, 0.7})));
  CHECK_FALSE(order_leq(diag({1.0, 0.0}), diag({0.0, 1.0})));
  CHECK_THROWS_AS(order_leq(identity(2), identity(3)), Error);
}

TEST_CASE("support_projection examples") {
  CHECK(diff(support_projection(diag({0.5, 0.0, 0.3})).matrix(), diag({1.0, 0.0, 1.0})) < 1e-14);
  CHECK(support_projection(zero(2)).rank() == 0);
  Vector psi(2);
  psi << 1.0, 1.0;
  psi /= std::sqrt(2.0);
  const Matrix rank_one = outer(psi, psi);
  CHECK(diff(support_projection(rank_one).matrix(), rank_one) < 1e-14);
  CHECK_THROWS_AS(support_projection(diag({-0.5, 1.0})), Error);
}

TEST_CASE("support_projection is minimal") {
  Rng rng(7);
  for (int d = 2; d <= 4; ++d) {
    const Matrix b = rng.isometry(d, d - 1);
    const Matrix x = b * rng.density(d - 1) * b.adjoint();
    const Projection s = support_projection(x);
    CHECK(diff(s.matrix() * x, x) <= 1e-12);
    CHECK(diff(x * s.matrix(), x) <= 1e-12);
    const Projection junk_space = s.complement();
    for (int k = 0; k < 20; ++k) {
      const int extra = rng.uniform_int(0, junk_space.rank());
      const Matrix junk = junk_space.basis() * rng.isometry(junk_space.rank(), extra);
      const std::array<Projection, 2> pair{s, Projection::onto_span(junk, d)};
      const Projection q = proj_supremum(pair);
      CHECK(diff(x * q.matrix(), x) <= 1e-12);
      CHECK(order_leq(s.matrix(), q.matrix()));
    }
  }
}

TEST_CASE("proj_infimum examples") {
  const std::vector<Projection> diag_pair{Projection::from_matrix(diag({1.0, 1.0, 0.0})),
                                          Projection::from_matrix(diag({0.0, 1.0, 1.0}))};
  CHECK(diff(proj_infimum(diag_pair).matrix(), diag({0.0, 1.0, 0.0})) < 1e-14);

  Rng rng(8);
  const Projection p = rng.projection(3, 2);
  const std::vector<Projection> single{p};
  CHECK(distance(proj_infimum(single), p) < 1e-12);

  Vector plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  const std::vector<Projection> skew{Projection::from_matrix(diag({1.0, 0.0})),
                                     Projection::from_matrix(outer(plus, plus))};
  CHECK(proj_infimum(skew).rank() == static_cast<int>(test::scalar(oracle::inf_zero_plus_rank)));
  CHECK(proj_infimum(skew).rank() == 0);
  CHECK(distance(proj_supremum(skew), Projection::identity(2)) < 1e-12);
}

TEST_CASE("proj_supremum examples") {
  const std::vector<Projection> pair{Projection::from_matrix(diag({1.0, 0.0, 0.0})),
                                     Projection::from_matrix(diag({0.0, 1.0, 0.0}))};
  CHECK(diff(proj_supremum(pair).matrix(), diag({1.0, 1.0, 0.0})) < 1e-14);
  Rng rng(9);
  const Projection p = rng.projection(4, 2);
  const std::vector<Projection> single{p};
  CHECK(distance(proj_supremum(single), p) < 1e-12);
  const std::vector<Projection> mixed{Projection::zero(2), Projection::identity(3)};
  CHECK_THROWS_AS(proj_supremum(mixed), Error);
}

TEST_CASE("lattice operations obey De Morgan") {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<Projection> family;
    std::vector<Projection> complements;
    const int n = rng.uniform_int(1, 4);
    for (int k = 0; k < n; ++k) {
      family.push_back(rng.projection(d, rng.uniform_int(0, d)));
      complements.push_back(family.back().complement());
    }
    CHECK(distance(proj_supremum(family), proj_infimum(complements).complement()) <= 1e-9);
    const Projection inf = proj_infimum(family);
    for (const Projection& p : family) CHECK(order_leq(inf.matrix(), p.matrix()));
  }
}

TEST_CASE("projection invariants") {
  Rng rng(11);
  const Projection p = rng.projection(4, 2);
  const Tolerances tol;
  CHECK(diff(p.matrix().adjoint(), p.matrix()) <= tol.atol);
  CHECK(diff(p.matrix() * p.matrix(), p.matrix()) <= tol.atol);
  const HermitianEig e = hermitian_eig(p.matrix());
  CHECK(std::abs(e.values(0)) <= tol.atol);
  CHECK(std::abs(e.values(3) - 1.0) <= tol.atol);
  CHECK(diff(p.matrix() * p.basis(), p.basis()) <= tol.atol);
  CHECK_THROWS_AS(Projection::from_matrix(diag({0.5, 1.0})), Error);
  CHECK_THROWS_AS(Projection::from_basis(Matrix::Ones(2, 1), 2), Error);
}

TEST_CASE("order diagnostic examples") {
  const Projection p = Projection::from_matrix(diag({1.0, 0.0}));
  OrderDiagnostic both = order_diagnostic(diag({1.0, 0.0}), p);
  for (const ConditionCheck& c : both.case_a) CHECK(c.holds);
  for (const ConditionCheck& c : both.case_b) CHECK(c.holds);

  OrderDiagnostic above = order_diagnostic(diag({1.0, 0.5}), p);
  for (const ConditionCheck& c : above.case_a) CHECK(c.holds);
  for (const ConditionCheck& c : above.case_b) CHECK_FALSE(c.holds);

  OrderDiagnostic below = order_diagnostic(diag({0.5, 0.0}), p);
  for (const ConditionCheck& c : below.case_a) CHECK_FALSE(c.holds);
  for (const ConditionCheck& c : below.case_b) CHECK(c.holds);

  CHECK_THROWS_AS(order_diagnostic(diag({1.5, 0.0}), p), Error);
}

TEST_CASE("order diagnostic conditions agree on random inputs") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    for (int d = 2; d <= 4; ++d) {
      const Projection p = rng.projection(d, rng.uniform_int(0, d));
      const Matrix y = rng.unit_interval_hermitian(d);
      const Matrix pc = identity(d) - p.matrix();
      const Matrix x = trial % 3 == 0 ? Matrix(p.matrix() + pc * y * pc)
                       : trial % 3 == 1 ? Matrix(p.matrix() * y * p.matrix())
                                        : y;
      const OrderDiagnostic diag = order_diagnostic(0.5 * (x + x.adjoint()), p);
      CHECK(diag.case_a_agrees());
      CHECK(diag.case_b_agrees());
    }
  }
}

TEST_CASE("decisions have an indeterminate band") {
  CHECK(decide(1e-10, 1e-9) == Decision::Holds);
  CHECK(decide(5e-9, 1e-9) == Decision::Indeterminate);
  CHECK(decide(1e-7, 1e-9) == Decision::Fails);
}

}
