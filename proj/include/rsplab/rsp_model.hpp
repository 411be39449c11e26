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

#pragma once

// Canonical one-way remote state preparation protocols, stored as Bob's view:
// for every classical message m a probability p_m, a recovery unitary U_m on
// (Bob's half of the shared pair) (x) (a k_m-dimensional ancilla in |0>), and
// the byproduct state b_m that U_m leaves next to the prepared state.
//
// Bob's state before recovery, for input phi, is
//   rho_{phi m} = Tr_2[ U_m^dagger (phi (x) b_m) U_m ]
// where factor 1 is d' dimensional and factor 2 (traced) is k_m dimensional.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsplab/matcore.hpp"
#include "rsplab/quantum.hpp"

namespace rsplab {

struct MessageBranch {
  std::string label;
  double probability = 0.0;
  /// Square, of size d' * anc_dim == d * dim(byproduct).
  ComplexMatrix unitary{1, 1};
  ComplexMatrix byproduct{1, 1};
  std::size_t anc_dim = 1;
};

/// Branch list plus dimensions. Construction checks only what every
/// computation relies on (the shape law and distinct labels); the
/// probabilistic and spectral invariants are reported by validate_faithful.
class FaithfulRspProtocol {
 public:
  FaithfulRspProtocol(std::size_t d, std::size_t d_prime, std::vector<MessageBranch> branches);

  std::size_t d() const { return d_; }
  std::size_t d_prime() const { return d_prime_; }
  const std::vector<MessageBranch>& branches() const { return branches_; }
  const MessageBranch& branch(const std::string& label) const;
  double probability_sum() const;

 private:
  std::size_t d_;
  std::size_t d_prime_;
  std::vector<MessageBranch> branches_;
};

/// A protocol that, with probability p_f, reports failure and leaves Bob in
/// the state-independent rho_f. The branch probabilities sum to 1 - p_f.
class NonFaithfulRspProtocol {
 public:
  NonFaithfulRspProtocol(FaithfulRspProtocol base, double p_f, ComplexMatrix rho_f);

  const FaithfulRspProtocol& base() const { return base_; }
  double p_f() const { return p_f_; }
  const ComplexMatrix& rho_f() const { return rho_f_; }

 private:
  FaithfulRspProtocol base_;
  double p_f_;
  ComplexMatrix rho_f_;
};

struct CostReport {
  /// log2 of the number of messages with nonzero probability (no ceiling).
  double worst_case_bits = 0.0;
  /// Shannon entropy of the message distribution, base 2.
  double entropy_bits = 0.0;
  std::size_t message_count = 0;
};

struct ValidationReport {
  bool passed = false;
  double probability_sum = 0.0;
  /// Residual max-abs(F(E_ij) - Tr(E_ij) I/d') for every matrix unit E_ij,
  /// row-major over (i, j), where F is the protocol-averaged branch map.
  std::vector<double> residuals;
  double max_residual = 0.0;
  std::vector<std::string> failures;
};

/// Tr_2[U^dagger (x (x) b) U] for an arbitrary d x d operator x.
ComplexMatrix apply_branch(const FaithfulRspProtocol& p, const MessageBranch& branch,
                           const ComplexMatrix& x);

/// rho_{phi m} for a d-dimensional pure-state projector phi.
ComplexMatrix bob_conditional_state(const FaithfulRspProtocol& p, const ComplexMatrix& phi,
                                    const std::string& label);

/// Checks the branch invariants and that the averaged branch map sends every
/// operator X to Tr(X) I/d', evaluated on all d^2 matrix units.
ValidationReport validate_faithful(const FaithfulRspProtocol& p, double tol);
/// Same, with the failure arm: p_f Tr(X) rho_f + sum_m p_m F_m(X) = Tr(X) I/d'.
ValidationReport validate_nonfaithful(const NonFaithfulRspProtocol& p, double tol);

/// Heisenberg-Weyl operator X^a Z^b with X|j> = |j+1 mod d>, Z|j> = w^j |j>.
ComplexMatrix heisenberg_weyl(std::size_t a, std::size_t b, std::size_t d);
/// Label used for the (a, b) teleportation branch, e.g. "x1z0".
std::string weyl_label(std::size_t a, std::size_t b);

/// d^2 equiprobable branches with U = X^a Z^b and trivial byproduct.
FaithfulRspProtocol make_teleportation(std::size_t d);

/// Valid protocol with a random shared twist S and random ancilla content:
/// d' = d, U_m = (X^a Z^b S) (x) V_m, b_m random of dimension anc_dim.
FaithfulRspProtocol random_valid_protocol(std::size_t d, std::size_t anc_dim, std::uint64_t seed);

/// Teleportation branches scaled to (1 - p_f)/d^2 plus a failure arm.
NonFaithfulRspProtocol make_failing_teleportation(std::size_t d, double p_f, ComplexMatrix rho_f);

CostReport cost_from_probabilities(std::span<const double> probabilities);
CostReport classical_cost(const FaithfulRspProtocol& p);
/// The failure flag counts as one more message.
CostReport classical_cost(const NonFaithfulRspProtocol& p);

/// Stable 64-bit FNV-1a fingerprint over dimensions, labels, probabilities
/// and matrix entries, rendered as 16 hex digits.
std::string protocol_fingerprint(const FaithfulRspProtocol& p);

}  // namespace rsplab
