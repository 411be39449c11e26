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

#include <doctest.h>
#include <omp.h>

#include <array>
#include <vector>

#include "oracles.hpp"
#include "rsplab/kernels.hpp"
#include "rsplab/matcore.hpp"

using namespace rsplab;

namespace {

struct ThreadGuard {
  int saved = omp_get_max_threads();
  explicit ThreadGuard(int n) { omp_set_num_threads(n); }
  ~ThreadGuard() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("matmul: parallel matches serial bit for bit") {
  ThreadGuard threads(4);
  for (auto [n, k, m] : {std::array<std::size_t, 3>{1, 1, 1}, {3, 5, 2}, {17, 9, 13}, {64, 64, 64}}) {
    const ComplexMatrix a = oracle::random_matrix(n, k, 11);
    const ComplexMatrix b = oracle::random_matrix(k, m, 12);
    std::vector<Complex> s(n * m), p(n * m);
    kernels::serial::matmul(a.data(), b.data(), s, n, k, m);
    kernels::parallel::matmul(a.data(), b.data(), p, n, k, m);
    CHECK(s == p);
    CHECK(dist(ComplexMatrix(n, m, s), oracle::naive_product(a, b)) < 1e-13);
  }
}

TEST_CASE("kron: parallel matches serial and the index-loop oracle") {
  ThreadGuard threads(3);
  const ComplexMatrix a = oracle::random_matrix(3, 4, 1);
  const ComplexMatrix b = oracle::random_matrix(5, 2, 2);
  std::vector<Complex> s(15 * 8), p(15 * 8);
  kernels::serial::kron(a.data(), 3, 4, b.data(), 5, 2, s);
  kernels::parallel::kron(a.data(), 3, 4, b.data(), 5, 2, p);
  CHECK(s == p);
  CHECK(ComplexMatrix(15, 8, s) == oracle::naive_kron(a, b));
}

TEST_CASE("partial trace and measured contraction: parallel matches serial") {
  ThreadGuard threads(4);
  const SubsystemShape shape{3, 2, 4};
  const ComplexMatrix m = oracle::random_matrix(24, 24, 5);
  const std::vector<std::size_t> kept{0, 2};
  const std::vector<std::size_t> traced{1};
  const auto ko = subsystem_offsets(shape, kept);
  const auto to = subsystem_offsets(shape, traced);
  std::vector<Complex> s(144), p(144);
  kernels::serial::partial_trace(m.data(), ko, to, s);
  kernels::parallel::partial_trace(m.data(), ko, to, p);
  CHECK(s == p);

  const ComplexMatrix op = oracle::random_matrix(2, 2, 6);
  kernels::serial::contract_measured(m.data(), op.data(), to, ko, s);
  kernels::parallel::contract_measured(m.data(), op.data(), to, ko, p);
  CHECK(s == p);
}

TEST_CASE("front-ends give the same answer above and below the parallel threshold") {
  ThreadGuard threads(4);
  // 40^3 multiply-adds is above kParallelThreshold; the oracle is serial.
  const ComplexMatrix a = oracle::random_matrix(40, 40, 7);
  const ComplexMatrix b = oracle::random_matrix(40, 40, 8);
  REQUIRE(40u * 40u * 40u >= kernels::kParallelThreshold);
  CHECK(dist(a * b, oracle::naive_product(a, b)) < 1e-12);

  const ComplexMatrix big = oracle::random_matrix(64, 64, 9);
  CHECK(dist(partial_trace(big, SubsystemShape{8, 8}, {1}), oracle::trace_second(big, 8, 8)) < 1e-12);
}
