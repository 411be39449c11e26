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

#include "rsplab/conversion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>

namespace rsplab {

namespace {

std::string first_failure(const ValidationReport& r) {
  return r.failures.empty() ? std::string("unknown failure") : r.failures.front();
}

PureState max_ent_pure(std::size_t d) {
  const ComplexMatrix v = max_ent_state(d);
  return PureState(std::vector<Complex>(v.data().begin(), v.data().end()));
}

/// Runs `body(i)` for i in [0, n) across OpenMP threads and rethrows the
/// first exception on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(rsplab_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

ComplexMatrix oblivious_element(const FaithfulRspProtocol& p, const MessageBranch& branch) {
  const std::size_t d = p.d();
  const std::size_t dp = p.d_prime();
  const std::size_t k = branch.anc_dim;
  const ComplexMatrix lifted = tensor(ComplexMatrix::identity(d), transpose(branch.unitary));
  const ComplexMatrix source = tensor(outer(max_ent_state(d)), transpose(branch.byproduct));
  const ComplexMatrix moved = lifted * source * adjoint(lifted);
  ComplexMatrix m = partial_trace(moved, SubsystemShape{d, dp, k}, {2});
  m *= static_cast<double>(d * dp) * branch.probability;
  return m;
}

ObliviousPovm build_oblivious_povm(const FaithfulRspProtocol& p, double tol) {
  const ValidationReport report = validate_faithful(p, tol);
  if (!report.passed)
    throw PreconditionError("cannot convert an invalid protocol: " + first_failure(report));
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> elements;
  for (const MessageBranch& b : p.branches()) {
    labels.push_back(b.label);
    elements.push_back(oblivious_element(p, b));
  }
  return ObliviousPovm{Povm(SubsystemShape{p.d(), p.d_prime()}, std::move(labels),
                            std::move(elements), tol),
                       protocol_fingerprint(p), std::nullopt, 0.0};
}

ObliviousPovm build_nonfaithful_povm(const NonFaithfulRspProtocol& np, double tol) {
  const ValidationReport report = validate_nonfaithful(np, tol);
  if (!report.passed)
    throw PreconditionError("cannot convert an invalid nonfaithful protocol: " +
                            first_failure(report));
  const FaithfulRspProtocol& p = np.base();
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> elements;
  for (const MessageBranch& b : p.branches()) {
    labels.push_back(b.label);
    elements.push_back(oblivious_element(p, b));
  }
  std::optional<std::size_t> failure_index;
  double scale = 0.0;
  if (np.p_f() > 0.0) {
    scale = static_cast<double>(p.d_prime()) * np.p_f();
    failure_index = elements.size();
    labels.emplace_back(kFailureLabel);
    elements.push_back(tensor(ComplexMatrix::identity(p.d()), transpose(np.rho_f())) *
                       Complex(scale));
  }
  return ObliviousPovm{Povm(SubsystemShape{p.d(), p.d_prime()}, std::move(labels),
                            std::move(elements), tol),
                       protocol_fingerprint(p), failure_index, scale};
}

std::vector<MeasurementOutcome> simulate_modified(const ObliviousPovm& op, const PureState& phi) {
  const auto& dims = op.povm.space_shape().dims();
  const std::size_t d = dims.at(0);
  const std::size_t dp = dims.at(1);
  if (phi.dim() != d) throw ShapeError("simulate_modified: input dimension does not match POVM");
  const ComplexMatrix joint = tensor(projector(phi), outer(max_ent_state(dp)));
  const std::size_t measured[] = {0, 1};
  return measure_on_subsystem(joint, SubsystemShape{d, dp, dp}, op.povm, measured);
}

EquivalenceReport verify_equivalence(const FaithfulRspProtocol& p, const Ensemble& ensemble,
                                     double tol) {
  return verify_equivalence(p, build_oblivious_povm(p, tol / 10.0), ensemble, tol);
}

EquivalenceReport verify_equivalence(const FaithfulRspProtocol& p, const ObliviousPovm& op,
                                     const Ensemble& ensemble, double tol) {
  if (ensemble.dim() != p.d()) throw ShapeError("verify_equivalence: ensemble dimension != d");
  for (const std::string& label : op.povm.labels())
    if (label != kFailureLabel) (void)p.branch(label);

  EquivalenceReport report;
  report.tolerance = tol;
  const GenericityResult g = is_generic(ensemble);
  report.ensemble_generic = g.generic;
  report.ensemble_rank = g.rank;
  if (!g.generic)
    report.diagnostics.push_back("ensemble is not generic: projector span has rank " +
                                 std::to_string(g.rank) + " < d^2 = " +
                                 std::to_string(p.d() * p.d()));

  const std::size_t n_states = ensemble.size();
  std::vector<std::vector<EquivalenceEntry>> per_state(n_states);
  parallel_for(n_states, [&](std::size_t s) {
    const PureState& phi = ensemble.states()[s];
    const ComplexMatrix phi_proj = projector(phi);
    for (const MeasurementOutcome& o : simulate_modified(op, phi)) {
      EquivalenceEntry e;
      e.state_index = s;
      e.state_label = ensemble.labels()[s];
      e.message = o.label;
      e.measured_probability = o.probability;
      if (o.label == kFailureLabel) continue;
      const MessageBranch& branch = p.branch(o.label);
      e.expected_probability = branch.probability;
      e.probability_deviation = std::abs(e.measured_probability - e.expected_probability);
      if (!o.null_state && e.expected_probability > kNullProbability) {
        e.state_distance = dist(o.conditional_state, apply_branch(p, branch, phi_proj));
        e.state_checked = true;
      }
      per_state[s].push_back(std::move(e));
    }
  });

  std::map<std::string, std::pair<double, double>> range;
  for (auto& entries : per_state) {
    for (EquivalenceEntry& e : entries) {
      report.max_probability_deviation =
          std::max(report.max_probability_deviation, e.probability_deviation);
      if (e.state_checked)
        report.max_state_distance = std::max(report.max_state_distance, e.state_distance);
      auto [it, inserted] = range.try_emplace(e.message, e.measured_probability,
                                              e.measured_probability);
      if (!inserted) {
        it->second.first = std::min(it->second.first, e.measured_probability);
        it->second.second = std::max(it->second.second, e.measured_probability);
      }
      report.entries.push_back(std::move(e));
    }
  }
  for (const auto& [label, lo_hi] : range)
    report.max_probability_spread =
        std::max(report.max_probability_spread, lo_hi.second - lo_hi.first);

  if (report.max_probability_deviation > tol)
    report.diagnostics.push_back("message probability deviates from p_m by " +
                                 std::to_string(report.max_probability_deviation));
  if (report.max_state_distance > tol)
    report.diagnostics.push_back("conditional state deviates from the original protocol by " +
                                 std::to_string(report.max_state_distance));
  report.passed = report.diagnostics.empty();
  return report;
}

EntanglementReport entanglement_transmission_check(const FaithfulRspProtocol& p) {
  return entanglement_transmission_check(p, build_oblivious_povm(p));
}

EntanglementReport entanglement_transmission_check(const FaithfulRspProtocol& p,
                                                   const ObliviousPovm& op) {
  const std::size_t d = p.d();
  const std::size_t dp = p.d_prime();
  if (op.povm.space_shape() != SubsystemShape{d, dp})
    throw ShapeError("entanglement_transmission_check: POVM does not match protocol");

  // reference (x) input (x) Alice's half (x) Bob's half
  const ComplexMatrix joint = tensor(outer(max_ent_state(d)), outer(max_ent_state(dp)));
  const std::size_t measured[] = {1, 2};
  const auto outcomes = measure_on_subsystem(joint, SubsystemShape{d, d, dp, dp}, op.povm, measured);
  const PureState target = max_ent_pure(d);

  EntanglementReport report;
  report.min_fidelity = std::numeric_limits<double>::infinity();
  std::vector<MessageFidelity> per_message(outcomes.size());
  parallel_for(outcomes.size(), [&](std::size_t i) {
    const MeasurementOutcome& o = outcomes[i];
    per_message[i] = {o.label, o.probability, 0.0};
    if (o.null_state || o.label == kFailureLabel) return;
    const MessageBranch& b = p.branch(o.label);
    ComplexMatrix ancilla(b.anc_dim, b.anc_dim);
    ancilla(0, 0) = 1.0;
    const ComplexMatrix lifted = tensor(ComplexMatrix::identity(d), b.unitary);
    const ComplexMatrix recovered = lifted * tensor(o.conditional_state, ancilla) * adjoint(lifted);
    const ComplexMatrix output =
        partial_trace(recovered, SubsystemShape{d, d, b.byproduct.rows()}, {2});
    per_message[i].fidelity = fidelity(target, output);
  });

  double weight = 0.0;
  for (const MessageFidelity& m : per_message) {
    if (m.probability < kNullProbability || m.label == kFailureLabel) continue;
    report.mean_fidelity += m.probability * m.fidelity;
    weight += m.probability;
    report.min_fidelity = std::min(report.min_fidelity, m.fidelity);
  }
  if (weight > 0.0) report.mean_fidelity /= weight;
  if (!std::isfinite(report.min_fidelity)) report.min_fidelity = 0.0;
  report.per_message = std::move(per_message);
  return report;
}

double CostComparison::max_difference() const {
  return std::max({std::abs(original.worst_case_bits - modified.worst_case_bits),
                   std::abs(original.entropy_bits - modified.entropy_bits),
                   std::abs(static_cast<double>(original.message_count) -
                            static_cast<double>(modified.message_count))});
}

CostComparison cost_invariance_report(const FaithfulRspProtocol& p, const Ensemble& ensemble) {
  const GenericityResult g = is_generic(ensemble);
  if (!g.generic)
    throw PreconditionError("cost invariance needs a generic ensemble; projector span rank " +
                            std::to_string(g.rank) + " < d^2 = " + std::to_string(p.d() * p.d()));
  const ObliviousPovm op = build_oblivious_povm(p);
  std::vector<double> averaged(op.povm.size(), 0.0);
  for (const PureState& phi : ensemble.states()) {
    const auto outcomes = simulate_modified(op, phi);
    for (std::size_t i = 0; i < outcomes.size(); ++i) averaged[i] += outcomes[i].probability;
  }
  for (double& v : averaged) v /= static_cast<double>(ensemble.size());
  // Measured probabilities carry rounding noise; snap values that are zero
  // to within the null-probability threshold so message counts agree.
  for (double& v : averaged)
    if (v < kNullProbability) v = 0.0;
  return {classical_cost(p), cost_from_probabilities(averaged)};
}

}  // namespace rsplab
