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
#include "rsplab/conversion.hpp"

using namespace rsplab;

namespace {

const ComplexMatrix kMixed2 = ComplexMatrix::identity(2) * Complex(0.5);

ComplexMatrix sum_transposed(const Povm& povm) {
  const std::size_t n = povm.space_shape().total();
  ComplexMatrix s(n, n);
  for (const ComplexMatrix& e : povm.elements()) s += transpose(e);
  return s;
}

/// Swaps two POVM elements, keeping the labels in place.
ObliviousPovm swap_elements(const ObliviousPovm& op, std::size_t i, std::size_t j) {
  std::vector<ComplexMatrix> elements = op.povm.elements();
  std::swap(elements[i], elements[j]);
  return {Povm(op.povm.space_shape(), op.povm.labels(), elements), op.source_fingerprint,
          op.failure_index, op.failure_scale};
}

}  // namespace

TEST_CASE("teleportation converts to the Bell projectors") {
  const ObliviousPovm op = build_oblivious_povm(make_teleportation(2));
  const auto bell = oracle::bell_vectors();
  const char* labels[] = {"x0z0", "x1z0", "x0z1", "x1z1"};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto idx = op.povm.index_of(labels[i]);
    REQUIRE(idx.has_value());
    CHECK(dist(op.povm.elements()[*idx], oracle::naive_outer(bell[i])) < 1e-15);
  }
  CHECK_FALSE(op.failure_index.has_value());
  CHECK(op.source_fingerprint == protocol_fingerprint(make_teleportation(2)));
}

TEST_CASE("converted measurements are POVMs") {
  for (std::size_t d : {2u, 3u})
    for (std::size_t k : {1u, 2u, 3u})
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const ObliviousPovm op = build_oblivious_povm(random_valid_protocol(d, k, seed));
        CHECK(dist(sum_transposed(op.povm), ComplexMatrix::identity(d * d)) < 1e-10);
        CHECK(op.povm.completeness_residual() < 1e-10);
        CHECK(op.povm.min_eigenvalue() >= -1e-10);
        for (const ComplexMatrix& e : op.povm.elements()) CHECK(is_hermitian(e, Tolerance(1e-12)));
      }
}

TEST_CASE("build_oblivious_povm rejects invalid protocols") {
  std::vector<MessageBranch> branches = make_teleportation(2).branches();
  branches[3].unitary = ComplexMatrix::identity(2);
  const FaithfulRspProtocol bad(2, 2, branches);
  try {
    (void)build_oblivious_povm(bad);
    FAIL("expected a PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("randomizing-map residual") != std::string::npos);
  }
}

TEST_CASE("simulate_modified") {
  const ObliviousPovm op = build_oblivious_povm(make_teleportation(2));

  SUBCASE("phi = |0>") {
    const auto out = simulate_modified(op, PureState::basis(2, 0));
    REQUIRE(out.size() == 4);
    // Label order is x0z0 (I), x0z1 (Z), x1z0 (X), x1z1 (XZ).
    const std::size_t flipped[] = {0, 0, 1, 1};
    for (std::size_t m = 0; m < 4; ++m) {
      CHECK(std::abs(out[m].probability - 0.25) < 1e-15);
      CHECK(dist(out[m].conditional_state, projector(PureState::basis(2, flipped[m]))) < 1e-15);
    }
  }

  SUBCASE("probabilities do not depend on phi") {
    const ObliviousPovm r = build_oblivious_povm(random_valid_protocol(3, 2, 4));
    std::vector<double> first;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto out = simulate_modified(r, random_pure(3, seed));
      if (first.empty()) {
        for (const auto& o : out) first.push_back(o.probability);
        continue;
      }
      for (std::size_t m = 0; m < out.size(); ++m) CHECK(std::abs(out[m].probability - first[m]) < 1e-12);
    }
  }

  CHECK_THROWS_AS(simulate_modified(op, random_pure(3, 1)), ShapeError);
}

TEST_CASE("verify_equivalence") {
  SUBCASE("teleportation on the tetrahedron") {
    const EquivalenceReport r = verify_equivalence(make_teleportation(2), tetrahedral_ensemble(), 1e-10);
    CHECK(r.passed);
    CHECK(r.max_probability_deviation < 1e-10);
    CHECK(r.max_state_distance < 1e-10);
    CHECK(r.ensemble_generic);
    CHECK(r.ensemble_rank == 4);
    CHECK(r.entries.size() == 16);
  }

  SUBCASE("random qutrit protocol on nine random states") {
    const FaithfulRspProtocol p = random_valid_protocol(3, 2, 5);
    const EquivalenceReport r = verify_equivalence(p, random_ensemble(3, 9, 17), 1e-9);
    CHECK(r.passed);
    CHECK(r.max_probability_spread < 1e-12);
  }

  SUBCASE("corrupted protocol after conversion") {
    const FaithfulRspProtocol p = random_valid_protocol(2, 2, 3);
    const ObliviousPovm op = build_oblivious_povm(p);
    std::vector<MessageBranch> branches = p.branches();
    branches[1].unitary = random_unitary(4, 1234);
    const FaithfulRspProtocol corrupted(2, 2, branches);
    const EquivalenceReport r = verify_equivalence(corrupted, op, tetrahedral_ensemble(), 1e-9);
    CHECK_FALSE(r.passed);
    CHECK(r.max_state_distance > 0.01);
  }

  SUBCASE("nongeneric ensemble is flagged") {
    const EquivalenceReport r =
        verify_equivalence(make_teleportation(2), latitude_ensemble(0.5, 8), 1e-9);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.ensemble_generic);
    CHECK(r.ensemble_rank == 3);
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics.front().find("not generic") != std::string::npos);
  }

  CHECK_THROWS_AS(verify_equivalence(make_teleportation(2), random_ensemble(3, 9, 1), 1e-9), ShapeError);
}

TEST_CASE("entanglement transmission") {
  const EntanglementReport tele = entanglement_transmission_check(make_teleportation(2));
  CHECK(std::abs(tele.min_fidelity - 1.0) < 1e-10);
  CHECK(std::abs(tele.mean_fidelity - 1.0) < 1e-10);
  CHECK(tele.per_message.size() == 4);
  for (const auto& m : tele.per_message) CHECK(std::abs(m.probability - 0.25) < 1e-14);

  for (std::uint64_t seed = 1; seed <= 3; ++seed)
    CHECK(std::abs(entanglement_transmission_check(random_valid_protocol(2, 2, seed)).min_fidelity - 1.0) < 1e-9);
  CHECK(std::abs(entanglement_transmission_check(make_teleportation(3)).min_fidelity - 1.0) < 1e-9);

  SUBCASE("swapping two elements breaks it") {
    const FaithfulRspProtocol p = make_teleportation(2);
    const ObliviousPovm swapped = swap_elements(build_oblivious_povm(p), 0, 1);
    const EntanglementReport r = entanglement_transmission_check(p, swapped);
    CHECK(r.min_fidelity < 0.9);
  }
}

TEST_CASE("nonfaithful conversion") {
  SUBCASE("p_f = 0 matches the faithful conversion entrywise") {
    const auto np = make_failing_teleportation(2, 0.0, kMixed2);
    const ObliviousPovm a = build_nonfaithful_povm(np);
    const ObliviousPovm b = build_oblivious_povm(make_teleportation(2));
    CHECK_FALSE(a.failure_index.has_value());
    REQUIRE(a.povm.size() == b.povm.size());
    for (std::size_t i = 0; i < a.povm.size(); ++i) {
      CHECK(a.povm.labels()[i] == b.povm.labels()[i]);
      CHECK(a.povm.elements()[i] == b.povm.elements()[i]);
    }
  }

  SUBCASE("p_f = 0.3 with rho_f = I/2") {
    const auto np = make_failing_teleportation(2, 0.3, kMixed2);
    const ObliviousPovm op = build_nonfaithful_povm(np);
    REQUIRE(op.failure_index.has_value());
    CHECK(op.povm.labels()[*op.failure_index] == kFailureLabel);
    CHECK(std::abs(op.failure_scale - 0.6) < 1e-15);
    CHECK(dist(op.povm.elements()[*op.failure_index], ComplexMatrix::identity(4) * Complex(0.3)) < 1e-15);
    CHECK(op.povm.completeness_residual() < 1e-10);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto out = simulate_modified(op, random_pure(2, seed));
      const auto& fail = out[*op.failure_index];
      CHECK(std::abs(fail.probability - 0.3) < 1e-10);
      CHECK(dist(fail.conditional_state, kMixed2) < 1e-10);
      for (std::size_t m = 0; m < 4; ++m) CHECK(std::abs(out[m].probability - 0.175) < 1e-10);
    }
  }

  CHECK_THROWS_AS(build_nonfaithful_povm(make_failing_teleportation(2, 0.3, projector(PureState::basis(2, 0)))),
                  PreconditionError);
}

TEST_CASE("cost invariance") {
  const CostComparison tele = cost_invariance_report(make_teleportation(2), tetrahedral_ensemble());
  CHECK(tele.original.worst_case_bits == 2.0);
  CHECK(tele.original.entropy_bits == 2.0);
  CHECK(tele.max_difference() < 1e-10);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const CostComparison c = cost_invariance_report(random_valid_protocol(2, 1, seed), tetrahedral_ensemble());
    CHECK(c.max_difference() < 1e-10);
    CHECK(c.original.message_count == c.modified.message_count);
  }

  CHECK_THROWS_AS(cost_invariance_report(make_teleportation(2), latitude_ensemble(0.3, 8)), PreconditionError);
}
