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

// Quantum objects on top of matcore: pure states, POVMs, measurement on
// subsystems, ensembles and their genericity, seeded random instances.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsplab/matcore.hpp"

namespace rsplab {

/// Normalized state vector. The global phase is canonicalized so that the
/// first nonzero amplitude is real and positive.
class PureState {
 public:
  /// Throws PreconditionError unless ||amplitudes|| = 1 within 1e-12.
  explicit PureState(std::vector<Complex> amplitudes);
  /// Rescales to unit norm first; throws on the zero vector.
  static PureState normalized(std::vector<Complex> amplitudes);
  /// Computational basis state |index>.
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  ComplexMatrix as_column() const;

 private:
  std::vector<Complex> amplitudes_;
};

/// |psi><psi|
ComplexMatrix projector(const PureState& psi);

/// Positive operators summing to the identity on `space_shape`.
class Povm {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  /// Validates positivity and completeness at `tol`; throws
  /// PreconditionError otherwise.
  Povm(SubsystemShape space_shape, std::vector<std::string> labels,
       std::vector<ComplexMatrix> elements, double tol = kDefaultTolerance);

  const SubsystemShape& space_shape() const { return shape_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// max-abs of sum(elements) - I.
  double completeness_residual() const;
  /// Smallest eigenvalue over all elements.
  double min_eigenvalue() const;

 private:
  SubsystemShape shape_;
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> elements_;
};

struct MeasurementOutcome {
  std::string label;
  double probability = 0.0;
  /// Normalized post-measurement state of the unmeasured factors. When the
  /// outcome has negligible probability this is the zero matrix and
  /// `null_state` is set.
  ComplexMatrix conditional_state{1, 1};
  bool null_state = false;
};

/// Outcomes with probability below this are kept with a null-state marker.
inline constexpr double kNullProbability = 1e-12;

/// Measures `povm` on the `measured` factors of `joint` (density on `shape`).
///
/// For each element M: p = Tr[(M (x) I) rho] and the conditional state of the
/// remaining factors is Tr_measured[(M (x) I) rho] / p. The POVM's factors
/// correspond to `measured` in the order listed; the remaining factors keep
/// their relative order. Throws ShapeError on mismatched
/// shapes, PreconditionError when `joint` is not a density matrix.
std::vector<MeasurementOutcome> measure_on_subsystem(const ComplexMatrix& joint,
                                                     const SubsystemShape& shape,
                                                     const Povm& povm,
                                                     std::span<const std::size_t> measured);

class Ensemble {
 public:
  Ensemble(std::vector<PureState> states, std::vector<std::string> labels);
  /// Labels default to "0", "1", ...
  explicit Ensemble(std::vector<PureState> states);

  std::size_t dim() const { return states_.front().dim(); }
  std::size_t size() const { return states_.size(); }
  const std::vector<PureState>& states() const { return states_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<PureState> states_;
  std::vector<std::string> labels_;
};

struct GenericityResult {
  bool generic = false;
  std::size_t rank = 0;
};

inline constexpr double kGenericityThreshold = 1e-10;

/// Rank of the span of the ensemble's projectors, from the Gram matrix
/// G_jk = Tr(P_j P_k). Generic iff the rank is dim^2.
GenericityResult is_generic(const Ensemble& e, double threshold = kGenericityThreshold);

/// Qubit state with Bloch vector (cos t cos e, cos t sin e, sin t), where t is
/// the latitude (0 = equator, pi/2 = |0>).
PureState bloch_state(double theta, double eta);
/// (x, y, z) with rho = (I + x X + y Y + z Z) / 2.
std::array<double, 3> bloch_vector(const ComplexMatrix& rho);

/// Four qubit states on the vertices of a regular tetrahedron.
Ensemble tetrahedral_ensemble();
/// `count` states at latitude `theta`, eta = 2 pi k / count.
Ensemble latitude_ensemble(double theta, std::size_t count);
/// State k is random_pure(dim, derive_seed(seed, k)).
Ensemble random_ensemble(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Independent seed for stream `stream` derived from `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

PureState random_pure(std::size_t d, std::uint64_t seed);
/// G G^dagger / Tr(G G^dagger) for complex Gaussian G.
ComplexMatrix random_density(std::size_t d, std::uint64_t seed);
/// Haar unitary: QR of a complex Gaussian matrix with R's diagonal phases
/// absorbed into Q.
ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed);

/// <psi| rho |psi>
double fidelity(const PureState& psi, const ComplexMatrix& rho);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace rsplab
