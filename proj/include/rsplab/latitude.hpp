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

// A faithful, Bob-oblivious protocol for qubit states on a fixed Bloch-sphere
// latitude. Alice measures her half of one ebit with a three-outcome POVM
// that depends on the state; outcomes 0 and 1 leave Bob with phi or
// Z phi Z, outcome 2 leaves |1><1| and the pair falls back to teleportation.
// Its ensemble is not generic, which is why it can beat 2 cbits per qubit.

#include <cstddef>
#include <string>
#include <vector>

#include "rsplab/quantum.hpp"

namespace rsplab {

enum class LatitudeCorrection { kIdentity, kPauliZ, kTeleportFallback };

class LatitudeProtocol {
 public:
  /// theta in [0, pi/2]; throws std::invalid_argument otherwise.
  explicit LatitudeProtocol(double theta);

  double theta() const { return theta_; }
  /// Fallback probability sin(theta) / (1 + sin(theta)), in [0, 1/2].
  double p() const { return p_; }
  /// theta = pi/2: every member is |0>.
  bool degenerate() const;

  /// M0 = (1-p) phi^T, M1 = (1-p) (Z phi Z)^T, M2 = I - M0 - M1 = 2p |1><1|.
  Povm povm_for(double eta) const;
  static LatitudeCorrection correction(std::size_t outcome);

 private:
  double theta_;
  double p_;
};

Povm latitude_povm(double theta, double eta);

struct LatitudeRun {
  double theta = 0.0;
  double eta = 0.0;
  /// Bob's state straight after Alice's measurement.
  std::vector<MeasurementOutcome> raw;
  /// After Bob's correction (outcome 2: teleported copy of phi).
  std::vector<MeasurementOutcome> corrected;
  /// Fidelity of each corrected state with phi.
  std::vector<double> fidelities;
  /// Resources consumed by the teleportation fallback, per run, weighted by
  /// its probability.
  double expected_extra_ebits = 0.0;
  double expected_extra_cbits = 0.0;
};

LatitudeRun simulate_latitude(double theta, double eta);

/// H(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

struct LatitudeCost {
  double theta = 0.0;
  double p = 0.0;
  double entropy = 0.0;
  std::size_t n = 1;
  /// n H(p): locating the fallback positions.
  double failure_location_bits = 0.0;
  /// n (1 - p): one bit per successful qubit.
  double success_bits = 0.0;
  /// 2 n p: teleportation of the fallback qubits.
  double teleport_bits = 0.0;
  /// n (H(p) + p + 1)
  double total_bits = 0.0;
  double per_qubit() const { return total_bits / static_cast<double>(n); }
  bool beats_teleportation() const { return per_qubit() < 2.0; }
};

LatitudeCost latitude_cost(double theta, std::size_t n = 1);
/// theta with sin(theta) / (1 + sin(theta)) = p, for p in [0, 1/2].
double latitude_theta_for_p(double p);

/// The root in (0, 1/2) of H(p) + p = 1, by bisection. Below it the latitude
/// protocol costs less than teleportation.
double teleportation_crossover();

/// is_generic on `sample_count` latitude states (eta uniform).
GenericityResult latitude_genericity_demo(double theta, std::size_t sample_count);

}  // namespace rsplab
