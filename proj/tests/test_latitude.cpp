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
#include "rsplab/latitude.hpp"

using namespace rsplab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("latitude POVM") {
  SUBCASE("equator has no fallback arm") {
    const Povm p = latitude_povm(0.0, 0.9);
    CHECK(max_abs(p.elements()[2]) < 1e-15);
    CHECK(dist(p.elements()[0] + p.elements()[1], ComplexMatrix::identity(2)) < 1e-15);
  }

  SUBCASE("theta = pi/6 puts 2p on |1><1|") {
    const LatitudeProtocol proto(kPi / 6.0);
    CHECK(std::abs(proto.p() - 1.0 / 3.0) < 1e-15);
    for (double eta : {0.0, 1.0, 2.5}) {
      const Povm p = proto.povm_for(eta);
      CHECK(dist(p.elements()[2], projector(PureState::basis(2, 1)) * Complex(2.0 / 3.0)) < 1e-15);
      CHECK(p.min_eigenvalue() > -1e-15);
    }
  }

  SUBCASE("M0 + M1 = (1 - p)(I + sin(theta) sigma_z)") {
    for (double theta : {0.1, 0.6, 1.2}) {
      const LatitudeProtocol proto(theta);
      const Povm p = proto.povm_for(0.3);
      const ComplexMatrix expected =
          (ComplexMatrix::identity(2) + pauli::z() * Complex(std::sin(theta))) * Complex(1.0 - proto.p());
      CHECK(dist(p.elements()[0] + p.elements()[1], expected) < 1e-14);
    }
  }

  CHECK(LatitudeProtocol::correction(0) == LatitudeCorrection::kIdentity);
  CHECK(LatitudeProtocol::correction(1) == LatitudeCorrection::kPauliZ);
  CHECK(LatitudeProtocol::correction(2) == LatitudeCorrection::kTeleportFallback);
  CHECK_THROWS_AS(LatitudeProtocol::correction(3), std::out_of_range);
  CHECK_THROWS(LatitudeProtocol(-0.1));
  CHECK_THROWS(LatitudeProtocol(2.0));
}

TEST_CASE("simulate_latitude") {
  SUBCASE("theta = pi/6 gives (1/3, 1/3, 1/3)") {
    for (double eta : {0.0, 0.7, 4.0}) {
      const LatitudeRun run = simulate_latitude(kPi / 6.0, eta);
      for (const auto& o : run.raw) CHECK(std::abs(o.probability - 1.0 / 3.0) < 1e-12);
      CHECK(std::abs(run.expected_extra_ebits - 1.0 / 3.0) < 1e-12);
      CHECK(std::abs(run.expected_extra_cbits - 2.0 / 3.0) < 1e-12);
    }
  }

  SUBCASE("theta = 0, eta = pi/4") {
    const LatitudeRun run = simulate_latitude(0.0, kPi / 4.0);
    CHECK(std::abs(run.raw[0].probability - 0.5) < 1e-12);
    CHECK(std::abs(run.raw[1].probability - 0.5) < 1e-12);
    CHECK(run.raw[2].probability < 1e-12);
    CHECK(run.raw[2].null_state);
    const ComplexMatrix phi = projector(bloch_state(0.0, kPi / 4.0));
    const ComplexMatrix flipped = pauli::z() * phi * pauli::z();
    CHECK(dist(run.raw[1].conditional_state, flipped) < 1e-12);
    CHECK(dist(flipped, phi) > 0.5);
    for (double f : run.fidelities) CHECK(std::abs(f - 1.0) < 1e-12);
  }

  SUBCASE("outcome statistics do not depend on eta") {
    const double p = LatitudeProtocol(0.4).p();
    for (int i = 0; i < 16; ++i) {
      const LatitudeRun run = simulate_latitude(0.4, 2.0 * kPi * i / 16.0);
      CHECK(std::abs(run.raw[0].probability - (1.0 - p) / 2.0) < 1e-12);
      CHECK(std::abs(run.raw[1].probability - (1.0 - p) / 2.0) < 1e-12);
      CHECK(std::abs(run.raw[2].probability - p) < 1e-12);
    }
  }

  SUBCASE("corrected states are exact on a grid") {
    for (double theta : {0.0, 0.2, kPi / 6.0, 1.0, 1.5})
      for (int i = 0; i < 16; ++i)
        for (double f : simulate_latitude(theta, 2.0 * kPi * i / 16.0).fidelities)
          CHECK(std::abs(f - 1.0) < 1e-10);
  }

  SUBCASE("pole: both success arms collapse onto |0>") {
    const LatitudeProtocol pole(kPi / 2.0);
    CHECK(pole.degenerate());
    CHECK(std::abs(pole.p() - 0.5) < 1e-15);
    const LatitudeRun run = simulate_latitude(kPi / 2.0, 0.0);
    CHECK(std::abs(run.raw[0].probability - 0.25) < 1e-12);
    CHECK(std::abs(run.raw[1].probability - 0.25) < 1e-12);
    CHECK(std::abs(run.raw[2].probability - 0.5) < 1e-12);
    for (double f : run.fidelities) CHECK(std::abs(f - 1.0) < 1e-12);
  }
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(std::abs(binary_entropy(1.0 / 3.0) - 0.9182958340544896) < 1e-15);
  CHECK(std::abs(binary_entropy(0.2) - 0.7219280948873623) < 1e-15);
  for (double p : {0.01, 0.1, 0.37, 0.9}) {
    CHECK(std::abs(binary_entropy(p) - oracle::naive_binary_entropy(p)) < 1e-14);
    CHECK(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) < 1e-15);
  }
  CHECK_THROWS(binary_entropy(-0.1));
  CHECK_THROWS(binary_entropy(1.1));
}

TEST_CASE("latitude_cost") {
  const LatitudeCost eq = latitude_cost(0.0, 7);
  CHECK(eq.per_qubit() == 1.0);
  CHECK(eq.total_bits == 7.0);
  CHECK(eq.beats_teleportation());

  const LatitudeCost c02 = latitude_cost(latitude_theta_for_p(0.2));
  CHECK(std::abs(c02.p - 0.2) < 1e-15);
  CHECK(std::abs(c02.per_qubit() - 1.92193) < 1e-5);
  CHECK(std::abs(c02.per_qubit() - 1.9219280948873623) < 1e-13);
  CHECK(c02.beats_teleportation());

  const LatitudeCost c13 = latitude_cost(kPi / 6.0);
  CHECK(std::abs(c13.per_qubit() - 2.25163) < 1e-5);
  CHECK(std::abs(c13.per_qubit() - 2.251629167387823) < 1e-13);
  CHECK_FALSE(c13.beats_teleportation());

  SUBCASE("parts add up and scale with n") {
    for (std::size_t n : {1u, 3u, 10u}) {
      const LatitudeCost c = latitude_cost(0.35, n);
      CHECK(std::abs(c.failure_location_bits + c.success_bits + c.teleport_bits - c.total_bits) < 1e-12);
      CHECK(std::abs(c.failure_location_bits - n * c.entropy) < 1e-12);
      CHECK(std::abs(c.success_bits - n * (1.0 - c.p)) < 1e-12);
      CHECK(std::abs(c.teleport_bits - 2.0 * n * c.p) < 1e-12);
      CHECK(std::abs(c.per_qubit() - (c.entropy + c.p + 1.0)) < 1e-12);
    }
  }

  CHECK_THROWS(latitude_cost(0.1, 0));
}

TEST_CASE("teleportation crossover") {
  const double p = teleportation_crossover();
  CHECK(p > 0.22);
  CHECK(p < 0.23);
  CHECK(std::abs(p - 0.22709219521934815) < 1e-12);
  CHECK(std::abs(binary_entropy(p) + p - 1.0) < 1e-12);
  CHECK(latitude_cost(latitude_theta_for_p(p - 1e-3)).beats_teleportation());
  CHECK_FALSE(latitude_cost(latitude_theta_for_p(p + 1e-3)).beats_teleportation());
}

TEST_CASE("latitude ensembles are not generic") {
  for (double theta : {0.0, kPi / 4.0, 1.3}) {
    const GenericityResult g = latitude_genericity_demo(theta, 8);
    CHECK_FALSE(g.generic);
    CHECK(g.rank == 3);
  }
  CHECK(latitude_genericity_demo(0.5, 4).rank == 3);
  CHECK_THROWS(latitude_genericity_demo(0.5, 3));
  const GenericityResult t = is_generic(tetrahedral_ensemble());
  CHECK(t.generic);
  CHECK(t.rank == 4);
}
