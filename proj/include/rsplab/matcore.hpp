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

// Dense complex matrices with explicit tensor-factor bookkeeping.
//
// Conventions used throughout rsplab:
//   * computational basis states are 0-indexed;
//   * composite indices are row-major with the leftmost factor most
//     significant, so (i1, i2) on dims [d1, d2] maps to i1 * d2 + i2;
//   * transposes are taken in that fixed computational basis;
//   * factor indices passed to partial_trace and friends are 0-based.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsplab {

using Complex = std::complex<double>;

/// Raised when operand shapes or subsystem factorizations do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's mathematical precondition is not met
/// (non-Hermitian input, non-density state, nongeneric ensemble, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical tolerance. Always strictly positive.
class Tolerance {
 public:
  static constexpr double kProtocol = 1e-9;
  static constexpr double kAlgebraic = 1e-12;

  explicit Tolerance(double eps = kProtocol) : eps_(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  }
  double eps() const { return eps_; }

 private:
  double eps_;
};

class ComplexMatrix {
 public:
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws on count mismatch or non-finite values.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix column(std::span<const Complex> v);
  static ComplexMatrix diagonal(std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor-factor dimensions of a square operator, leftmost factor first.
class SubsystemShape {
 public:
  SubsystemShape(std::initializer_list<std::size_t> dims);
  explicit SubsystemShape(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t factor_count() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  /// Product of all factor dimensions.
  std::size_t total() const;
  /// Product of the dimensions of the listed factors.
  std::size_t total(std::span<const std::size_t> factors) const;
  /// Factor indices not in `factors`, ascending.
  std::vector<std::size_t> complement(std::span<const std::size_t> factors) const;

  friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Composite-index contribution of every multi-index over `factors`.
///
/// Entry j is sum_f digit_f(j) * stride_f, where the digits of j enumerate the
/// listed factors in the given order (first listed = most significant). For
/// disjoint factor sets A and B covering the shape, every full index is
/// uniquely offsets(A)[a] + offsets(B)[b].
std::vector<std::size_t> subsystem_offsets(const SubsystemShape& shape,
                                           std::span<const std::size_t> factors);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
template <class... Rest>
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                     const Rest&... rest) {
  return tensor(tensor(a, b), c, rest...);
}

/// Reduced operator on the factors not listed in `traced`, which keep their
/// relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::span<const std::size_t> traced);
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> traced);

/// `op` acting on `factors` of `shape`, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const SubsystemShape& shape,
                    std::span<const std::size_t> factors);

Complex trace(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
ComplexMatrix adjoint(const ComplexMatrix& m);

/// |Phi_d> = d^{-1/2} sum_j |jj>, as a d^2 x 1 column.
ComplexMatrix max_ent_state(std::size_t d);
/// |v><v| for a column vector v.
ComplexMatrix outer(const ComplexMatrix& v);

/// Real eigenvalues in nondecreasing order. Throws PreconditionError when m is
/// not Hermitian to within `hermitian_tol` (max-abs of m - m^dagger).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double hermitian_tol = 1e-9);

/// Max absolute entrywise difference. Throws ShapeError on shape mismatch.
double dist(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, Tolerance tol);
bool is_psd(const ComplexMatrix& m, Tolerance tol);
bool is_unitary(const ComplexMatrix& m, Tolerance tol);
bool is_density(const ComplexMatrix& m, Tolerance tol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);

/// Numerical rank via singular values above `threshold`.
std::size_t numerical_rank(const ComplexMatrix& m, double threshold);

/// exp(2 pi i k / n), exact at multiples of a quarter turn.
Complex root_of_unity(long long k, long long n);

std::string describe_shape(const ComplexMatrix& m);

}  // namespace rsplab
