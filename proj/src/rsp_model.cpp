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

#include "rsplab/rsp_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace rsplab {

namespace {

constexpr double kPurityTolerance = 1e-9;

void check_branch_shape(std::size_t d, std::size_t d_prime, const MessageBranch& b) {
  if (b.anc_dim == 0) throw ShapeError("branch '" + b.label + "': anc_dim must be >= 1");
  if (!b.byproduct.is_square())
    throw ShapeError("branch '" + b.label + "': byproduct state must be square");
  const std::size_t in = d_prime * b.anc_dim;
  const std::size_t out = d * b.byproduct.rows();
  if (in != out)
    throw ShapeError("branch '" + b.label + "': shape law d' * anc_dim = d * dim(b) violated (" +
                     std::to_string(in) + " vs " + std::to_string(out) + ")");
  if (b.unitary.rows() != in || b.unitary.cols() != in)
    throw ShapeError("branch '" + b.label + "': unitary must be " + std::to_string(in) + "x" +
                     std::to_string(in) + ", got " + describe_shape(b.unitary));
}

ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix e(d, d);
  e(i, j) = 1.0;
  return e;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Shared body of the faithful and nonfaithful validators. `failure_term(X)`
/// returns the operator the failure arm contributes for input X (zero when
/// there is no failure arm).
template <class FailureTerm>
ValidationReport validate_impl(const FaithfulRspProtocol& p, double target_sum, double tol,
                               FailureTerm failure_term) {
  ValidationReport r;
  const std::size_t d = p.d();
  const std::size_t dp = p.d_prime();
  const Tolerance t(tol);

  for (const MessageBranch& b : p.branches()) {
    if (!(b.probability >= 0.0))
      r.failures.push_back("branch '" + b.label + "': negative probability");
    if (!is_unitary(b.unitary, t))
      r.failures.push_back("branch '" + b.label + "': recovery operation is not unitary");
    if (!is_density(b.byproduct, t))
      r.failures.push_back("branch '" + b.label + "': byproduct is not a density matrix");
  }
  r.probability_sum = p.probability_sum();
  if (std::abs(r.probability_sum - target_sum) > tol)
    r.failures.push_back("message probabilities sum to " + std::to_string(r.probability_sum) +
                         ", expected " + std::to_string(target_sum));

  const ComplexMatrix maximally_mixed = ComplexMatrix::identity(dp) * Complex(1.0 / double(dp));
  r.residuals.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexMatrix unit = matrix_unit(d, i, j);
      ComplexMatrix averaged = failure_term(unit);
      for (const MessageBranch& b : p.branches())
        averaged += apply_branch(p, b, unit) * Complex(b.probability);
      const ComplexMatrix expected = i == j ? maximally_mixed : ComplexMatrix(dp, dp);
      r.residuals.push_back(dist(averaged, expected));
    }
  }
  r.max_residual = *std::max_element(r.residuals.begin(), r.residuals.end());
  if (r.max_residual > tol)
    r.failures.push_back("randomizing-map residual " + format_double(r.max_residual) +
                         " exceeds tolerance " + format_double(tol));
  r.passed = r.failures.empty();
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Protocol types

FaithfulRspProtocol::FaithfulRspProtocol(std::size_t d, std::size_t d_prime,
                                         std::vector<MessageBranch> branches)
    : d_(d), d_prime_(d_prime), branches_(std::move(branches)) {
  if (d == 0 || d_prime == 0) throw ShapeError("protocol dimensions must be >= 1");
  if (branches_.empty()) throw PreconditionError("protocol has no message branches");
  std::set<std::string> seen;
  for (const MessageBranch& b : branches_) {
    if (!seen.insert(b.label).second)
      throw PreconditionError("duplicate branch label '" + b.label + "'");
    check_branch_shape(d_, d_prime_, b);
  }
}

const MessageBranch& FaithfulRspProtocol::branch(const std::string& label) const {
  for (const MessageBranch& b : branches_)
    if (b.label == label) return b;
  throw std::out_of_range("unknown message label '" + label + "'");
}

double FaithfulRspProtocol::probability_sum() const {
  double s = 0.0;
  for (const MessageBranch& b : branches_) s += b.probability;
  return s;
}

NonFaithfulRspProtocol::NonFaithfulRspProtocol(FaithfulRspProtocol base, double p_f,
                                               ComplexMatrix rho_f)
    : base_(std::move(base)), p_f_(p_f), rho_f_(std::move(rho_f)) {
  if (!(p_f >= 0.0 && p_f < 1.0)) throw PreconditionError("failure probability must be in [0, 1)");
  if (!rho_f_.is_square() || rho_f_.rows() != base_.d_prime())
    throw ShapeError("failure state must be d' x d'");
}

// ---------------------------------------------------------------------------
// Bob's view

ComplexMatrix apply_branch(const FaithfulRspProtocol& p, const MessageBranch& branch,
                           const ComplexMatrix& x) {
  if (!x.is_square() || x.rows() != p.d()) throw ShapeError("apply_branch: input must be d x d");
  const ComplexMatrix rotated = adjoint(branch.unitary) * tensor(x, branch.byproduct) * branch.unitary;
  return partial_trace(rotated, SubsystemShape{p.d_prime(), branch.anc_dim}, {1});
}

ComplexMatrix bob_conditional_state(const FaithfulRspProtocol& p, const ComplexMatrix& phi,
                                    const std::string& label) {
  if (!phi.is_square() || phi.rows() != p.d())
    throw ShapeError("bob_conditional_state: phi must be d x d");
  if (!is_density(phi, Tolerance(kPurityTolerance)) ||
      std::abs(trace(phi * phi).real() - 1.0) > kPurityTolerance)
    throw PreconditionError("bob_conditional_state: phi must be a pure-state projector");
  return apply_branch(p, p.branch(label), phi);
}

ValidationReport validate_faithful(const FaithfulRspProtocol& p, double tol) {
  const std::size_t dp = p.d_prime();
  return validate_impl(p, 1.0, tol, [dp](const ComplexMatrix&) { return ComplexMatrix(dp, dp); });
}

ValidationReport validate_nonfaithful(const NonFaithfulRspProtocol& np, double tol) {
  ValidationReport r = validate_impl(
      np.base(), 1.0 - np.p_f(), tol,
      [&np](const ComplexMatrix& x) { return np.rho_f() * (trace(x) * np.p_f()); });
  if (!is_density(np.rho_f(), Tolerance(tol))) {
    r.failures.push_back("failure state is not a density matrix");
    r.passed = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Constructions

ComplexMatrix heisenberg_weyl(std::size_t a, std::size_t b, std::size_t d) {
  // (X^a Z^b)|j> = w^{b j} |j + a mod d>
  ComplexMatrix u(d, d);
  for (std::size_t j = 0; j < d; ++j)
    u((j + a) % d, j) = root_of_unity(static_cast<long long>((b * j) % d), static_cast<long long>(d));
  return u;
}

std::string weyl_label(std::size_t a, std::size_t b) {
  return "x" + std::to_string(a) + "z" + std::to_string(b);
}

FaithfulRspProtocol make_teleportation(std::size_t d) {
  if (d < 2) throw ShapeError("teleportation needs d >= 2");
  std::vector<MessageBranch> branches;
  const double p = 1.0 / static_cast<double>(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      branches.push_back({weyl_label(a, b), p, heisenberg_weyl(a, b, d),
                          ComplexMatrix::identity(1), 1});
  return FaithfulRspProtocol(d, d, std::move(branches));
}

FaithfulRspProtocol random_valid_protocol(std::size_t d, std::size_t anc_dim, std::uint64_t seed) {
  if (d < 2) throw ShapeError("random_valid_protocol needs d >= 2");
  if (anc_dim < 1) throw ShapeError("random_valid_protocol needs anc_dim >= 1");
  const ComplexMatrix twist = random_unitary(d, derive_seed(seed, 0));
  const double p = 1.0 / static_cast<double>(d * d);
  std::vector<MessageBranch> branches;
  std::uint64_t stream = 1;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const ComplexMatrix v = random_unitary(anc_dim, derive_seed(seed, stream++));
      ComplexMatrix byproduct = random_density(anc_dim, derive_seed(seed, stream++));
      branches.push_back({weyl_label(a, b), p, tensor(heisenberg_weyl(a, b, d) * twist, v),
                          std::move(byproduct), anc_dim});
    }
  }
  return FaithfulRspProtocol(d, d, std::move(branches));
}

NonFaithfulRspProtocol make_failing_teleportation(std::size_t d, double p_f, ComplexMatrix rho_f) {
  const FaithfulRspProtocol tele = make_teleportation(d);
  std::vector<MessageBranch> branches = tele.branches();
  for (MessageBranch& b : branches) b.probability *= 1.0 - p_f;
  return NonFaithfulRspProtocol(FaithfulRspProtocol(d, d, std::move(branches)), p_f,
                                std::move(rho_f));
}

// ---------------------------------------------------------------------------
// Costs

CostReport cost_from_probabilities(std::span<const double> probabilities) {
  CostReport r;
  for (double p : probabilities) {
    if (!(p > 0.0)) continue;
    ++r.message_count;
    r.entropy_bits -= p * std::log2(p);
  }
  r.worst_case_bits = r.message_count > 0 ? std::log2(static_cast<double>(r.message_count)) : 0.0;
  return r;
}

CostReport classical_cost(const FaithfulRspProtocol& p) {
  std::vector<double> probs;
  for (const MessageBranch& b : p.branches()) probs.push_back(b.probability);
  return cost_from_probabilities(probs);
}

CostReport classical_cost(const NonFaithfulRspProtocol& p) {
  std::vector<double> probs{p.p_f()};
  for (const MessageBranch& b : p.base().branches()) probs.push_back(b.probability);
  return cost_from_probabilities(probs);
}

std::string protocol_fingerprint(const FaithfulRspProtocol& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  auto feed_u64 = [&](std::uint64_t v) { feed(&v, sizeof v); };
  auto feed_double = [&](double v) { feed_u64(std::bit_cast<std::uint64_t>(v)); };
  auto feed_matrix = [&](const ComplexMatrix& m) {
    feed_u64(m.rows());
    feed_u64(m.cols());
    for (const Complex& z : m.data()) {
      feed_double(z.real());
      feed_double(z.imag());
    }
  };
  feed_u64(p.d());
  feed_u64(p.d_prime());
  for (const MessageBranch& b : p.branches()) {
    feed_u64(b.label.size());
    feed(b.label.data(), b.label.size());
    feed_double(b.probability);
    feed_u64(b.anc_dim);
    feed_matrix(b.unitary);
    feed_matrix(b.byproduct);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rsplab
