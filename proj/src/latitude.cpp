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

#include "rsplab/latitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsplab {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi))
    throw std::invalid_argument("latitude theta must lie in [0, pi/2]");
}

}  // namespace

LatitudeProtocol::LatitudeProtocol(double theta) : theta_(theta), p_(0.0) {
  require_theta(theta);
  p_ = std::sin(theta) / (1.0 + std::sin(theta));
}

bool LatitudeProtocol::degenerate() const { return theta_ == kHalfPi; }

Povm LatitudeProtocol::povm_for(double eta) const {
  const ComplexMatrix phi = projector(bloch_state(theta_, eta));
  const ComplexMatrix z = pauli::z();
  const ComplexMatrix m0 = transpose(phi) * Complex(1.0 - p_);
  const ComplexMatrix m1 = transpose(z * phi * z) * Complex(1.0 - p_);
  const ComplexMatrix m2 = ComplexMatrix::identity(2) - m0 - m1;
  return Povm(SubsystemShape{2}, {"0", "1", "2"}, {m0, m1, m2}, 1e-12);
}

LatitudeCorrection LatitudeProtocol::correction(std::size_t outcome) {
  switch (outcome) {
    case 0: return LatitudeCorrection::kIdentity;
    case 1: return LatitudeCorrection::kPauliZ;
    case 2: return LatitudeCorrection::kTeleportFallback;
    default: throw std::out_of_range("latitude protocol has three outcomes");
  }
}

Povm latitude_povm(double theta, double eta) { return LatitudeProtocol(theta).povm_for(eta); }

LatitudeRun simulate_latitude(double theta, double eta) {
  const LatitudeProtocol protocol(theta);
  const PureState phi = bloch_state(theta, eta);
  const ComplexMatrix ebit = outer(max_ent_state(2));
  const std::size_t measured[] = {0};

  LatitudeRun run;
  run.theta = theta;
  run.eta = eta;
  run.raw = measure_on_subsystem(ebit, SubsystemShape{2, 2}, protocol.povm_for(eta), measured);
  const ComplexMatrix z = pauli::z();
  for (std::size_t m = 0; m < run.raw.size(); ++m) {
    MeasurementOutcome fixed = run.raw[m];
    if (!fixed.null_state) {
      switch (LatitudeProtocol::correction(m)) {
        case LatitudeCorrection::kIdentity:
          break;
        case LatitudeCorrection::kPauliZ:
          fixed.conditional_state = z * fixed.conditional_state * z;
          break;
        case LatitudeCorrection::kTeleportFallback:
          // One more ebit and 2 cbits deliver phi exactly.
          fixed.conditional_state = projector(phi);
          run.expected_extra_ebits += fixed.probability;
          run.expected_extra_cbits += 2.0 * fixed.probability;
          break;
      }
    }
    run.fidelities.push_back(fixed.null_state ? 1.0 : fidelity(phi, fixed.conditional_state));
    run.corrected.push_back(std::move(fixed));
  }
  return run;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

LatitudeCost latitude_cost(double theta, std::size_t n) {
  if (n == 0) throw std::invalid_argument("latitude_cost: n must be >= 1");
  const LatitudeProtocol protocol(theta);
  LatitudeCost c;
  c.theta = theta;
  c.p = protocol.p();
  c.n = n;
  c.entropy = binary_entropy(c.p);
  const double qubits = static_cast<double>(n);
  c.failure_location_bits = qubits * c.entropy;
  c.success_bits = qubits * (1.0 - c.p);
  c.teleport_bits = qubits * 2.0 * c.p;
  c.total_bits = c.failure_location_bits + c.success_bits + c.teleport_bits;
  return c;
}

double latitude_theta_for_p(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("latitude fallback p must be in [0, 1/2]");
  // p = s / (1 + s)  =>  s = p / (1 - p)
  return std::asin(std::min(1.0, p / (1.0 - p)));
}

double teleportation_crossover() {
  // H(p) + p - 1 is increasing on (0, 1/2): -1 at 0, +1/2 at 1/2.
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) + mid < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

GenericityResult latitude_genericity_demo(double theta, std::size_t sample_count) {
  if (sample_count < 4) throw std::invalid_argument("latitude_genericity_demo: need >= 4 samples");
  require_theta(theta);
  return is_generic(latitude_ensemble(theta, sample_count));
}

}  // namespace rsplab
