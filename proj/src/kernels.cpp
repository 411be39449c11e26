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

#include "rsplab/kernels.hpp"

namespace rsplab::kernels {

namespace serial {

void matmul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out,
            std::size_t n, std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (std::size_t l = 0; l < k; ++l) acc += a[i * k + l] * b[l * m + j];
      out[i * m + j] = acc;
    }
  }
}

void kron(std::span<const Complex> a, std::size_t ar, std::size_t ac, std::span<const Complex> b,
          std::size_t br, std::size_t bc, std::span<Complex> out) {
  const std::size_t cols = ac * bc;
  for (std::size_t i1 = 0; i1 < ar; ++i1)
    for (std::size_t i2 = 0; i2 < br; ++i2)
      for (std::size_t j1 = 0; j1 < ac; ++j1)
        for (std::size_t j2 = 0; j2 < bc; ++j2)
          out[(i1 * br + i2) * cols + j1 * bc + j2] = a[i1 * ac + j1] * b[i2 * bc + j2];
}

void partial_trace(std::span<const Complex> m, std::span<const std::size_t> kept_offsets,
                   std::span<const std::size_t> traced_offsets, std::span<Complex> out) {
  const std::size_t nk = kept_offsets.size();
  const std::size_t n = nk * traced_offsets.size();
  for (std::size_t r = 0; r < nk; ++r) {
    for (std::size_t c = 0; c < nk; ++c) {
      Complex acc = 0.0;
      for (std::size_t t : traced_offsets)
        acc += m[(kept_offsets[r] + t) * n + kept_offsets[c] + t];
      out[r * nk + c] = acc;
    }
  }
}

void contract_measured(std::span<const Complex> rho, std::span<const Complex> op,
                       std::span<const std::size_t> measured_offsets,
                       std::span<const std::size_t> kept_offsets, std::span<Complex> out) {
  const std::size_t nm = measured_offsets.size();
  const std::size_t nk = kept_offsets.size();
  const std::size_t n = nm * nk;
  for (std::size_t r = 0; r < nk; ++r) {
    for (std::size_t c = 0; c < nk; ++c) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j)
          acc += op[i * nm + j] *
                 rho[(measured_offsets[j] + kept_offsets[r]) * n + measured_offsets[i] +
                     kept_offsets[c]];
      out[r * nk + c] = acc;
    }
  }
}

}  // namespace serial

namespace parallel {

void matmul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out,
            std::size_t n, std::size_t k, std::size_t m) {
  const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (std::size_t l = 0; l < k; ++l) acc += a[i * k + l] * b[l * m + j];
      out[i * m + j] = acc;
    }
  }
}

void kron(std::span<const Complex> a, std::size_t ar, std::size_t ac, std::span<const Complex> b,
          std::size_t br, std::size_t bc, std::span<Complex> out) {
  const std::size_t cols = ac * bc;
  const auto rows = static_cast<long long>(ar * br);
#pragma omp parallel for schedule(static)
  for (long long rr = 0; rr < rows; ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    const std::size_t i1 = r / br;
    const std::size_t i2 = r % br;
    for (std::size_t j1 = 0; j1 < ac; ++j1)
      for (std::size_t j2 = 0; j2 < bc; ++j2)
        out[r * cols + j1 * bc + j2] = a[i1 * ac + j1] * b[i2 * bc + j2];
  }
}

void partial_trace(std::span<const Complex> m, std::span<const std::size_t> kept_offsets,
                   std::span<const std::size_t> traced_offsets, std::span<Complex> out) {
  const std::size_t nk = kept_offsets.size();
  const std::size_t n = nk * traced_offsets.size();
  const auto cells = static_cast<long long>(nk * nk);
#pragma omp parallel for schedule(static)
  for (long long cell = 0; cell < cells; ++cell) {
    const std::size_t r = static_cast<std::size_t>(cell) / nk;
    const std::size_t c = static_cast<std::size_t>(cell) % nk;
    Complex acc = 0.0;
    for (std::size_t t : traced_offsets) acc += m[(kept_offsets[r] + t) * n + kept_offsets[c] + t];
    out[r * nk + c] = acc;
  }
}

void contract_measured(std::span<const Complex> rho, std::span<const Complex> op,
                       std::span<const std::size_t> measured_offsets,
                       std::span<const std::size_t> kept_offsets, std::span<Complex> out) {
  const std::size_t nm = measured_offsets.size();
  const std::size_t nk = kept_offsets.size();
  const std::size_t n = nm * nk;
  const auto cells = static_cast<long long>(nk * nk);
#pragma omp parallel for schedule(static)
  for (long long cell = 0; cell < cells; ++cell) {
    const std::size_t r = static_cast<std::size_t>(cell) / nk;
    const std::size_t c = static_cast<std::size_t>(cell) % nk;
    Complex acc = 0.0;
    for (std::size_t i = 0; i < nm; ++i)
      for (std::size_t j = 0; j < nm; ++j)
        acc += op[i * nm + j] *
               rho[(measured_offsets[j] + kept_offsets[r]) * n + measured_offsets[i] +
                   kept_offsets[c]];
    out[r * nk + c] = acc;
  }
}

}  // namespace parallel

}  // namespace rsplab::kernels
