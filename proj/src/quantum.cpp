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

#include "rsplab/quantum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rsplab/kernels.hpp"

namespace rsplab {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kJointDensityTolerance = 1e-9;

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

void canonicalize_phase(std::vector<Complex>& amps) {
  for (const Complex& z : amps) {
    if (std::abs(z) > 1e-14) {
      const Complex phase = std::conj(z) / std::abs(z);
      for (Complex& w : amps) w *= phase;
      return;
    }
  }
}

PureState state_from_bloch(double x, double y, double z) {
  const double polar = std::acos(std::clamp(z, -1.0, 1.0));
  const double azimuth = std::atan2(y, x);
  return PureState::normalized(
      {std::cos(polar / 2.0), std::polar(std::sin(polar / 2.0), azimuth)});
}

std::vector<Complex> gaussian_entries(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(n);
  for (Complex& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return v;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw ShapeError("PureState: dimension must be >= 1");
  if (std::abs(std::sqrt(norm2(amplitudes_)) - 1.0) > kNormTolerance)
    throw PreconditionError("PureState: amplitudes are not unit norm");
  canonicalize_phase(amplitudes_);
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(norm2(amplitudes));
  if (!(n > 0.0)) throw PreconditionError("PureState: cannot normalize the zero vector");
  for (Complex& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ShapeError("PureState::basis: index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

ComplexMatrix PureState::as_column() const { return ComplexMatrix::column(amplitudes_); }

ComplexMatrix projector(const PureState& psi) { return outer(psi.as_column()); }

// ---------------------------------------------------------------------------
// Povm

Povm::Povm(SubsystemShape space_shape, std::vector<std::string> labels,
           std::vector<ComplexMatrix> elements, double tol)
    : shape_(std::move(space_shape)), labels_(std::move(labels)), elements_(std::move(elements)) {
  if (elements_.empty()) throw PreconditionError("Povm: no elements");
  if (labels_.size() != elements_.size()) throw ShapeError("Povm: labels/elements size mismatch");
  const std::size_t n = shape_.total();
  for (const ComplexMatrix& e : elements_)
    if (e.rows() != n || e.cols() != n) throw ShapeError("Povm: element does not match space shape");
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (!is_psd(elements_[i], Tolerance(tol)))
      throw PreconditionError("Povm: element '" + labels_[i] + "' is not positive semidefinite");
  if (completeness_residual() > tol)
    throw PreconditionError("Povm: elements do not sum to the identity (residual " +
                            std::to_string(completeness_residual()) + ")");
}

std::optional<std::size_t> Povm::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

double Povm::completeness_residual() const {
  ComplexMatrix sum(shape_.total(), shape_.total());
  for (const ComplexMatrix& e : elements_) sum += e;
  return dist(sum, ComplexMatrix::identity(shape_.total()));
}

double Povm::min_eigenvalue() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const ComplexMatrix& e : elements_) lo = std::min(lo, rsplab::min_eigenvalue(e));
  return lo;
}

// ---------------------------------------------------------------------------
// Measurement

std::vector<MeasurementOutcome> measure_on_subsystem(const ComplexMatrix& joint,
                                                     const SubsystemShape& shape,
                                                     const Povm& povm,
                                                     std::span<const std::size_t> measured) {
  if (!joint.is_square() || joint.rows() != shape.total())
    throw ShapeError("measure_on_subsystem: joint state does not match shape");
  if (measured.empty() || measured.size() >= shape.factor_count())
    throw ShapeError("measure_on_subsystem: measured set must be a nonempty proper subset");
  std::vector<std::size_t> measured_dims;
  for (std::size_t f : measured) {
    if (f >= shape.factor_count()) throw ShapeError("measure_on_subsystem: factor out of range");
    measured_dims.push_back(shape[f]);
  }
  if (measured_dims != povm.space_shape().dims())
    throw ShapeError("measure_on_subsystem: POVM space shape does not match measured factors");
  if (!is_density(joint, Tolerance(kJointDensityTolerance)))
    throw PreconditionError("measure_on_subsystem: joint state is not a density matrix");

  const auto kept = shape.complement(measured);
  const auto meas_off = subsystem_offsets(shape, measured);
  const auto kept_off = subsystem_offsets(shape, kept);
  const std::size_t nk = kept_off.size();
  const bool parallel =
      meas_off.size() * meas_off.size() * nk * nk >= kernels::kParallelThreshold;

  std::vector<MeasurementOutcome> out;
  out.reserve(povm.size());
  for (std::size_t e = 0; e < povm.size(); ++e) {
    ComplexMatrix unnormalized(nk, nk);
    if (parallel)
      kernels::parallel::contract_measured(joint.data(), povm.elements()[e].data(), meas_off,
                                           kept_off, unnormalized.data());
    else
      kernels::serial::contract_measured(joint.data(), povm.elements()[e].data(), meas_off,
                                         kept_off, unnormalized.data());
    MeasurementOutcome o;
    o.label = povm.labels()[e];
    o.probability = std::max(0.0, trace(unnormalized).real());
    if (o.probability < kNullProbability) {
      o.conditional_state = ComplexMatrix(nk, nk);
      o.null_state = true;
    } else {
      o.conditional_state = unnormalized * Complex(1.0 / o.probability);
    }
    out.push_back(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ensembles

Ensemble::Ensemble(std::vector<PureState> states, std::vector<std::string> labels)
    : states_(std::move(states)), labels_(std::move(labels)) {
  if (states_.empty()) throw PreconditionError("Ensemble: no states");
  if (labels_.size() != states_.size()) throw ShapeError("Ensemble: labels/states size mismatch");
  for (const PureState& s : states_)
    if (s.dim() != states_.front().dim()) throw ShapeError("Ensemble: states differ in dimension");
}

Ensemble::Ensemble(std::vector<PureState> states)
    : Ensemble(states, default_labels(states.size())) {}

GenericityResult is_generic(const Ensemble& e, double threshold) {
  const std::size_t n = e.size();
  ComplexMatrix gram(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      Complex overlap = 0.0;
      const auto& a = e.states()[j].amplitudes();
      const auto& b = e.states()[k].amplitudes();
      for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
      gram(j, k) = gram(k, j) = std::norm(overlap);  // Tr(P_j P_k)
    }
  }
  GenericityResult r;
  r.rank = numerical_rank(gram, threshold);
  r.generic = r.rank == e.dim() * e.dim();
  return r;
}

PureState bloch_state(double theta, double eta) {
  return state_from_bloch(std::cos(theta) * std::cos(eta), std::cos(theta) * std::sin(eta),
                          std::sin(theta));
}

std::array<double, 3> bloch_vector(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw ShapeError("bloch_vector: expected a 2x2 matrix");
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

Ensemble tetrahedral_ensemble() {
  const double s = 1.0 / std::sqrt(3.0);
  return Ensemble({state_from_bloch(s, s, s), state_from_bloch(s, -s, -s),
                   state_from_bloch(-s, s, -s), state_from_bloch(-s, -s, s)},
                  {"t0", "t1", "t2", "t3"});
}

Ensemble latitude_ensemble(double theta, std::size_t count) {
  std::vector<PureState> states;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < count; ++k) {
    const double eta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    states.push_back(bloch_state(theta, eta));
    labels.push_back("eta" + std::to_string(k));
  }
  return Ensemble(std::move(states), std::move(labels));
}

Ensemble random_ensemble(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<PureState> states;
  for (std::size_t k = 0; k < count; ++k) states.push_back(random_pure(dim, derive_seed(seed, k)));
  return Ensemble(std::move(states));
}

// ---------------------------------------------------------------------------
// Random instances

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PureState random_pure(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw ShapeError("random_pure: d must be >= 1");
  return PureState::normalized(gaussian_entries(d, seed));
}

ComplexMatrix random_density(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw ShapeError("random_density: d must be >= 1");
  const ComplexMatrix g(d, d, gaussian_entries(d * d, seed));
  ComplexMatrix rho = g * adjoint(g);
  rho *= 1.0 / trace(rho).real();
  return rho;
}

ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw ShapeError("random_unitary: d must be >= 1");
  const auto entries = gaussian_entries(d * d, seed);
  Eigen::MatrixXcd g(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) g(r, c) = entries[r * d + c];
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& packed = qr.matrixQR();
  for (std::size_t c = 0; c < d; ++c) {
    const Complex rcc = packed(c, c);
    const double mag = std::abs(rcc);
    if (mag > 0.0) q.col(c) *= rcc / mag;
  }
  ComplexMatrix u(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) u(r, c) = q(r, c);
  return u;
}

double fidelity(const PureState& psi, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != psi.dim())
    throw ShapeError("fidelity: state and density differ in dimension");
  const ComplexMatrix v = psi.as_column();
  return (adjoint(v) * rho * v)(0, 0).real();
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix y() {
  return ComplexMatrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
}
ComplexMatrix z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
}  // namespace pauli

}  // namespace rsplab
