// Copyright 2026 The rsplab Authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rsplab/matcore.hpp"
#include "rsplab/quantum.hpp"

using namespace rsplab;

namespace {
const ComplexMatrix I2 = ComplexMatrix::identity(2);
}

TEST_CASE("ComplexMatrix construction") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(0.0, INFINITY)}), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), ShapeError);
}

TEST_CASE("tensor") {
  CHECK(tensor(I2, I2) == ComplexMatrix::identity(4));

  const ComplexMatrix xz = tensor(pauli::x(), pauli::z());
  const ComplexMatrix expected = ComplexMatrix::from_rows(
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  CHECK(xz == expected);

  const ComplexMatrix r = tensor(oracle::random_matrix(2, 3, 1), oracle::random_matrix(3, 2, 2));
  CHECK(r.rows() == 6);
  CHECK(r.cols() == 6);

  SUBCASE("associative") {
    const ComplexMatrix a = oracle::random_matrix(2, 2, 3);
    const ComplexMatrix b = oracle::random_matrix(3, 1, 4);
    const ComplexMatrix c = oracle::random_matrix(2, 3, 5);
    CHECK(dist(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-15);
    CHECK(tensor(a, b, c) == tensor(tensor(a, b), c));
  }
}

TEST_CASE("partial_trace") {
  SUBCASE("product state factorization, all shapes up to 4") {
    for (std::size_t da = 1; da <= 4; ++da)
      for (std::size_t db = 1; db <= 4; ++db) {
        const ComplexMatrix a = oracle::random_matrix(da, da, unsigned(10 * da + db));
        const ComplexMatrix b = oracle::random_matrix(db, db, unsigned(100 + 10 * da + db));
        const ComplexMatrix ab = tensor(a, b);
        if (da * db == 1) continue;
        if (db > 1 || da > 1) {
          const SubsystemShape shape{da, db};
          CHECK(dist(partial_trace(ab, shape, {1}), a * oracle::naive_trace(b)) < 1e-13);
          CHECK(dist(partial_trace(ab, shape, {0}), b * oracle::naive_trace(a)) < 1e-13);
        }
      }
  }

  SUBCASE("maximally entangled marginal") {
    const ComplexMatrix phi = outer(max_ent_state(2));
    CHECK(dist(partial_trace(phi, SubsystemShape{2, 2}, {0}), I2 * Complex(0.5)) < 1e-15);
  }

  SUBCASE("d Tr_1[(phi^T (x) I) Phi_d] = phi") {
    for (std::size_t d : {2u, 3u, 4u}) {
      const ComplexMatrix phi = projector(random_pure(d, 40 + d));
      const ComplexMatrix lhs =
          partial_trace(tensor(transpose(phi), ComplexMatrix::identity(d)) * outer(max_ent_state(d)),
                        SubsystemShape{d, d}, {0}) *
          Complex(double(d));
      CHECK(dist(lhs, phi) < 1e-13);
    }
  }

  SUBCASE("matches index-loop oracle and preserves the trace") {
    const ComplexMatrix m = oracle::random_matrix(12, 12, 77);
    CHECK(dist(partial_trace(m, SubsystemShape{3, 4}, {1}), oracle::trace_second(m, 3, 4)) < 1e-14);
    CHECK(dist(partial_trace(m, SubsystemShape{3, 4}, {0}), oracle::trace_first(m, 3, 4)) < 1e-14);
    const SubsystemShape three{2, 3, 2};
    for (auto traced : {std::vector<std::size_t>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
      CHECK(std::abs(trace(partial_trace(m, three, traced)) - trace(m)) < 1e-13);
    }
  }

  SUBCASE("middle factor keeps outer order") {
    const ComplexMatrix a = oracle::random_matrix(2, 2, 1);
    const ComplexMatrix b = oracle::random_matrix(3, 3, 2);
    const ComplexMatrix c = oracle::random_matrix(2, 2, 3);
    const ComplexMatrix abc = tensor(a, b, c);
    CHECK(dist(partial_trace(abc, SubsystemShape{2, 3, 2}, {1}), tensor(a, c) * trace(b)) < 1e-13);
  }

  SUBCASE("errors") {
    const ComplexMatrix m = ComplexMatrix::identity(4);
    CHECK_THROWS_AS(partial_trace(m, SubsystemShape{2, 3}, {1}), ShapeError);
    CHECK_THROWS_AS(partial_trace(m, SubsystemShape{2, 2}, {0, 1}), ShapeError);
    CHECK_THROWS_AS(partial_trace(m, SubsystemShape{2, 2}, std::initializer_list<std::size_t>{}), ShapeError);
    CHECK_THROWS_AS(partial_trace(m, SubsystemShape{2, 2}, {2}), ShapeError);
    CHECK_THROWS_AS(partial_trace(ComplexMatrix(4, 2), SubsystemShape{2, 2}, {1}), ShapeError);
  }
}

TEST_CASE("Tr(A Tr_2 B) = Tr((A (x) I) B)") {
  for (unsigned s = 0; s < 5; ++s) {
    const std::size_t d = 2 + s % 3;
    const std::size_t k = 1 + s % 4;
    const ComplexMatrix a = oracle::random_matrix(d, d, 200 + s);
    const ComplexMatrix b = oracle::random_matrix(d * k, d * k, 300 + s);
    const Complex lhs = trace(a * partial_trace(b, SubsystemShape{d, k}, {1}));
    const Complex rhs = trace(tensor(a, ComplexMatrix::identity(k)) * b);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("transpose, conjugate, adjoint") {
  CHECK(transpose(pauli::y()) == pauli::y() * Complex(-1.0));
  const ComplexMatrix real = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK(conjugate(real) == real);

  const ComplexMatrix a = oracle::random_matrix(3, 3, 9);
  const ComplexMatrix b = oracle::random_matrix(3, 3, 10);
  CHECK(std::abs(trace(a * b) - trace(transpose(a) * transpose(b))) < 1e-14);

  const ComplexMatrix r = oracle::random_matrix(2, 5, 11);
  CHECK(adjoint(adjoint(r)) == r);
  CHECK(transpose(transpose(r)) == r);
  CHECK(conjugate(conjugate(r)) == r);
  CHECK(adjoint(r) == conjugate(transpose(r)));
}

TEST_CASE("max_ent_state") {
  CHECK(max_ent_state(1) == ComplexMatrix::from_rows({{1.0}}));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(dist(max_ent_state(2), ComplexMatrix::from_rows({{s}, {0}, {0}, {s}})) < 1e-16);
  for (std::size_t d = 1; d <= 4; ++d) {
    const ComplexMatrix rho = outer(max_ent_state(d));
    const ComplexMatrix mixed = ComplexMatrix::identity(d) * Complex(1.0 / double(d));
    CHECK(std::abs(trace(rho) - 1.0) < 1e-14);
    if (d > 1) {
      CHECK(dist(partial_trace(rho, SubsystemShape{d, d}, {0}), mixed) < 1e-13);
      CHECK(dist(partial_trace(rho, SubsystemShape{d, d}, {1}), mixed) < 1e-13);
    }
  }
}

TEST_CASE("hermitian_eigenvalues") {
  auto z = hermitian_eigenvalues(pauli::z());
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(1.0).epsilon(1e-14));

  for (double l : hermitian_eigenvalues(ComplexMatrix::identity(3) * Complex(1.0 / 3.0)))
    CHECK(l == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  SUBCASE("power-sum oracle on random Hermitian 4x4") {
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const ComplexMatrix h = oracle::random_hermitian(4, seed);
      const auto ev = hermitian_eigenvalues(h);
      CHECK(std::is_sorted(ev.begin(), ev.end()));
      const auto sums = oracle::power_sums(ev);
      const auto traces = oracle::trace_powers(h);
      for (std::size_t k = 0; k < sums.size(); ++k) CHECK(std::abs(sums[k] - traces[k]) < 1e-10);
    }
  }

  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix::from_rows({{0, 1}, {0, 0}})), PreconditionError);
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, 3)), ShapeError);
}

TEST_CASE("predicates") {
  const Tolerance tol(1e-12);
  ComplexMatrix one(2, 2);
  one(1, 1) = 1.0;
  CHECK(is_psd(one, tol));
  CHECK_FALSE(is_psd(pauli::z(), tol));
  CHECK(is_unitary(pauli::x() * std::polar(1.0, std::numbers::pi / 7.0), tol));
  CHECK_FALSE(is_unitary(ComplexMatrix::from_rows({{1, 1}, {0, 1}}), tol));
  CHECK_FALSE(is_density(pauli::x(), tol));
  CHECK(is_density(ComplexMatrix::identity(2) * Complex(0.5), tol));

  // Small negative eigenvalues inside the tolerance still count as PSD.
  ComplexMatrix noisy = one;
  noisy(0, 0) = -1e-14;
  CHECK(is_psd(noisy, tol));
  noisy(0, 0) = -1e-9;
  CHECK_FALSE(is_psd(noisy, tol));

  CHECK(dist(ComplexMatrix::from_rows({{1, 2}}), ComplexMatrix::from_rows({{1, 2.5}})) == 0.5);
  CHECK_THROWS_AS(dist(ComplexMatrix(2, 2), ComplexMatrix(2, 1)), ShapeError);
  CHECK_THROWS_AS(is_unitary(ComplexMatrix(2, 1), tol), ShapeError);
  CHECK_THROWS_AS(Tolerance(0.0), std::invalid_argument);
}

TEST_CASE("embed places an operator on chosen factors") {
  const ComplexMatrix a = oracle::random_matrix(2, 2, 1);
  const SubsystemShape shape{2, 3, 2};
  const std::size_t last[] = {2};
  CHECK(dist(embed(a, shape, last), tensor(ComplexMatrix::identity(6), a)) < 1e-15);
  const std::size_t first[] = {0};
  CHECK(dist(embed(a, shape, first), tensor(a, ComplexMatrix::identity(6))) < 1e-15);
}

TEST_CASE("root_of_unity is exact on quarter turns") {
  CHECK(root_of_unity(1, 2) == Complex(-1.0, 0.0));
  CHECK(root_of_unity(1, 4) == Complex(0.0, 1.0));
  CHECK(root_of_unity(3, 4) == Complex(0.0, -1.0));
  CHECK(root_of_unity(-1, 4) == Complex(0.0, -1.0));
  CHECK(std::abs(root_of_unity(1, 3) - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);
}
