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

// Conversion of a faithful, Bob-oblivious protocol into one in which Alice
// performs a single state-independent joint measurement on (phi, her half of
// |Phi_d'>), and the checks that the converted protocol looks identical from
// Bob's side.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsplab/quantum.hpp"
#include "rsplab/rsp_model.hpp"

namespace rsplab {

inline constexpr const char* kFailureLabel = "fail";

/// The converted measurement on [d, d'] (input register first).
struct ObliviousPovm {
  Povm povm;
  std::string source_fingerprint;
  /// Index of the failure element when built from a nonfaithful protocol.
  std::optional<std::size_t> failure_index;
  /// Factor c in the failure element c (I (x) rho_f^T); completeness forces
  /// c = d' * p_f.
  double failure_scale = 0.0;
};

/// Unnormalized measurement operator for one branch:
///   d d' p_m Tr_3[(I (x) U_m^T)(|Phi_d><Phi_d| (x) b_m^T)(I (x) U_m^*)]
/// where U_m^T carries the (d, dim b_m) factors to (d', k_m) and the trace
/// removes the k_m factor.
ComplexMatrix oblivious_element(const FaithfulRspProtocol& p, const MessageBranch& branch);

/// Throws PreconditionError when the protocol does not validate at `tol`.
ObliviousPovm build_oblivious_povm(const FaithfulRspProtocol& p, double tol = 1e-10);

/// Adds the failure element d' p_f (I (x) rho_f^T). Throws PreconditionError
/// when the modified normalization does not hold at `tol`.
ObliviousPovm build_nonfaithful_povm(const NonFaithfulRspProtocol& p, double tol = 1e-10);

/// Measures phi (x) |Phi_d'><Phi_d'| on factors {0, 1} of [d, d', d']; the
/// conditional states live on Bob's factor. Aligned with the POVM labels.
std::vector<MeasurementOutcome> simulate_modified(const ObliviousPovm& op, const PureState& phi);

struct EquivalenceEntry {
  std::size_t state_index = 0;
  std::string state_label;
  std::string message;
  double expected_probability = 0.0;
  double measured_probability = 0.0;
  double probability_deviation = 0.0;
  /// max-abs distance between the measured conditional state and rho_{phi m};
  /// only meaningful when `state_checked`.
  double state_distance = 0.0;
  bool state_checked = false;
};

struct EquivalenceReport {
  std::vector<EquivalenceEntry> entries;
  double tolerance = 0.0;
  double max_probability_deviation = 0.0;
  double max_state_distance = 0.0;
  /// Largest spread over the ensemble of any single message's measured
  /// probability.
  double max_probability_spread = 0.0;
  bool ensemble_generic = false;
  std::size_t ensemble_rank = 0;
  std::vector<std::string> diagnostics;
  bool passed = false;
};

/// Converts `p` and checks, for every state and message, that the measured
/// probability equals p_m and the conditional state equals rho_{phi m}. A
/// nongeneric ensemble fails the report with a diagnostic.
EquivalenceReport verify_equivalence(const FaithfulRspProtocol& p, const Ensemble& ensemble,
                                     double tol);
/// Same, against a caller-supplied measurement (negative controls).
EquivalenceReport verify_equivalence(const FaithfulRspProtocol& p, const ObliviousPovm& op,
                                     const Ensemble& ensemble, double tol);

struct MessageFidelity {
  std::string label;
  double probability = 0.0;
  double fidelity = 0.0;
};

struct EntanglementReport {
  /// Probability-weighted over messages.
  double mean_fidelity = 0.0;
  /// Over messages with non-negligible probability.
  double min_fidelity = 0.0;
  std::vector<MessageFidelity> per_message;
};

/// Runs the converted protocol on one half of |Phi_d> (reference (x) input),
/// applies Bob's recovery U_m to his half (x) |0..0>, discards the byproduct
/// and compares reference (x) output with |Phi_d>.
EntanglementReport entanglement_transmission_check(const FaithfulRspProtocol& p);
EntanglementReport entanglement_transmission_check(const FaithfulRspProtocol& p,
                                                   const ObliviousPovm& op);

struct CostComparison {
  CostReport original;
  CostReport modified;
  double max_difference() const;
};

/// Original cost from the stored p_m; modified cost from measured outcome
/// probabilities averaged over `ensemble`. Throws PreconditionError for a
/// nongeneric ensemble.
CostComparison cost_invariance_report(const FaithfulRspProtocol& p, const Ensemble& ensemble);

}  // namespace rsplab
