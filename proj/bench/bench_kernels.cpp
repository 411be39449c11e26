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

// Serial vs OpenMP kernels at the sizes the converter and verifier hit.
//
//   bench_kernels --benchmark_filter=matmul

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "rsplab/conversion.hpp"
#include "rsplab/kernels.hpp"
#include "rsplab/matcore.hpp"

namespace {

using rsplab::Complex;
namespace kernels = rsplab::kernels;

std::vector<Complex> random_data(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (Complex& z : v) z = {g(rng), g(rng)};
  return v;
}

template <bool Parallel>
void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_data(n * n, 1);
  const auto b = random_data(n * n, 2);
  std::vector<Complex> out(n * n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::matmul(a, b, out, n, n, n);
    else
      kernels::serial::matmul(a, b, out, n, n, n);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <bool Parallel>
void BM_kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_data(n * n, 3);
  const auto b = random_data(n * n, 4);
  std::vector<Complex> out(n * n * n * n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::kron(a, n, n, b, n, n, out);
    else
      kernels::serial::kron(a, n, n, b, n, n, out);
    benchmark::DoNotOptimize(out.data());
  }
}

/// Trace out the middle factor of [d, k, d].
template <bool Parallel>
void BM_partial_trace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::size_t k = 4;
  const rsplab::SubsystemShape shape{d, k, d};
  const std::size_t kept[] = {0, 2};
  const std::size_t traced[] = {1};
  const auto ko = rsplab::subsystem_offsets(shape, kept);
  const auto to = rsplab::subsystem_offsets(shape, traced);
  const std::size_t n = shape.total();
  const auto m = random_data(n * n, 5);
  std::vector<Complex> out(ko.size() * ko.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::partial_trace(m, ko, to, out);
    else
      kernels::serial::partial_trace(m, ko, to, out);
    benchmark::DoNotOptimize(out.data());
  }
}

/// One POVM element contracted against [d, d, d] with factors {0, 1} measured.
template <bool Parallel>
void BM_contract_measured(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const rsplab::SubsystemShape shape{d, d, d};
  const std::size_t measured[] = {0, 1};
  const std::size_t kept[] = {2};
  const auto mo = rsplab::subsystem_offsets(shape, measured);
  const auto ko = rsplab::subsystem_offsets(shape, kept);
  const std::size_t n = shape.total();
  const auto rho = random_data(n * n, 6);
  const auto op = random_data(d * d * d * d, 7);
  std::vector<Complex> out(d * d);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::contract_measured(rho, op, mo, ko, out);
    else
      kernels::serial::contract_measured(rho, op, mo, ko, out);
    benchmark::DoNotOptimize(out.data());
  }
}

/// End to end: convert a random protocol and run the full equivalence check.
void BM_verify_equivalence(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto p = rsplab::random_valid_protocol(d, 2, 1);
  const auto ensemble = rsplab::random_ensemble(d, d * d + 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rsplab::verify_equivalence(p, ensemble, 1e-9).passed);
}

}  // namespace

BENCHMARK(BM_matmul<false>)->Name("matmul/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_matmul<true>)->Name("matmul/parallel")->RangeMultiplier(2)->Range(16, 256)->UseRealTime();
BENCHMARK(BM_kron<false>)->Name("kron/serial")->RangeMultiplier(2)->Range(4, 32);
BENCHMARK(BM_kron<true>)->Name("kron/parallel")->RangeMultiplier(2)->Range(4, 32)->UseRealTime();
BENCHMARK(BM_partial_trace<false>)->Name("partial_trace/serial")->DenseRange(4, 16, 4);
BENCHMARK(BM_partial_trace<true>)->Name("partial_trace/parallel")->DenseRange(4, 16, 4)->UseRealTime();
BENCHMARK(BM_contract_measured<false>)->Name("contract_measured/serial")->DenseRange(2, 8, 2);
BENCHMARK(BM_contract_measured<true>)->Name("contract_measured/parallel")->DenseRange(2, 8, 2)->UseRealTime();
BENCHMARK(BM_verify_equivalence)->Name("verify_equivalence")->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
