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

// Raw dense kernels behind matcore. Every kernel exists twice: a plain serial
// loop nest kept as the reference, and an OpenMP version that the matcore
// front-ends dispatch to once the work exceeds kParallelThreshold. Both write
// into caller-provided row-major storage and must produce identical results
// (each output entry is accumulated in the same order by both).

#include <complex>
#include <cstddef>
#include <span>

namespace rsplab::kernels {

using Complex = std::complex<double>;

/// Approximate multiply-add count above which the parallel path is used.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

namespace serial {

/// out (n x m) = a (n x k) * b (k x m)
void matmul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out,
            std::size_t n, std::size_t k, std::size_t m);

/// out ((ar*br) x (ac*bc)) = a (ar x ac) kron b (br x bc)
void kron(std::span<const Complex> a, std::size_t ar, std::size_t ac, std::span<const Complex> b,
          std::size_t br, std::size_t bc, std::span<Complex> out);

/// out(k, k') = sum_t m(kept[k] + traced[t], kept[k'] + traced[t]); m is n x n
/// with n = kept.size() * traced.size().
void partial_trace(std::span<const Complex> m, std::span<const std::size_t> kept_offsets,
                   std::span<const std::size_t> traced_offsets, std::span<Complex> out);

/// out = Tr_measured[(op (x) I) rho]:
///   out(k, k') = sum_{i,j} op(i, j) rho(meas[j] + kept[k], meas[i] + kept[k'])
void contract_measured(std::span<const Complex> rho, std::span<const Complex> op,
                       std::span<const std::size_t> measured_offsets,
                       std::span<const std::size_t> kept_offsets, std::span<Complex> out);

}  // namespace serial

namespace parallel {

void matmul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out,
            std::size_t n, std::size_t k, std::size_t m);
void kron(std::span<const Complex> a, std::size_t ar, std::size_t ac, std::span<const Complex> b,
          std::size_t br, std::size_t bc, std::span<Complex> out);
void partial_trace(std::span<const Complex> m, std::span<const std::size_t> kept_offsets,
                   std::span<const std::size_t> traced_offsets, std::span<Complex> out);
void contract_measured(std::span<const Complex> rho, std::span<const Complex> op,
                       std::span<const std::size_t> measured_offsets,
                       std::span<const std::size_t> kept_offsets, std::span<Complex> out);

}  // namespace parallel

}  // namespace rsplab::kernels
