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

#include "rsplab/matcore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rsplab/kernels.hpp"

namespace rsplab {

namespace {

void require_finite(std::span<const Complex> v) {
  for (const Complex& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("ComplexMatrix entries must be finite");
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shape mismatch " + describe_shape(a) + " vs " +
                     describe_shape(b));
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) throw ShapeError(std::string(what) + ": matrix is not square");
}

bool use_parallel(std::size_t work) { return work >= kernels::kParallelThreshold; }

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

std::vector<std::size_t> checked_factor_list(const SubsystemShape& shape,
                                             std::span<const std::size_t> factors) {
  std::vector<std::size_t> sorted(factors.begin(), factors.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ShapeError("factor list contains duplicates");
  for (std::size_t f : sorted)
    if (f >= shape.factor_count()) throw ShapeError("factor index out of range");
  return sorted;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw ShapeError("ComplexMatrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("ComplexMatrix dimensions must be positive");
  if (data_.size() != rows * cols)
    throw ShapeError("ComplexMatrix entry count does not match rows x cols");
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
  return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  require_finite(m.data());
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matrix product: " + describe_shape(a) + " * " + describe_shape(b));
  ComplexMatrix out(a.rows(), b.cols());
  const std::size_t work = a.rows() * a.cols() * b.cols();
  if (use_parallel(work))
    kernels::parallel::matmul(a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
  else
    kernels::serial::matmul(a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
  return out;
}

// ---------------------------------------------------------------------------
// SubsystemShape

SubsystemShape::SubsystemShape(std::initializer_list<std::size_t> dims)
    : SubsystemShape(std::vector<std::size_t>(dims)) {}

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ShapeError("SubsystemShape needs at least one factor");
  for (std::size_t d : dims_)
    if (d == 0) throw ShapeError("SubsystemShape factor dimensions must be >= 1");
}

std::size_t SubsystemShape::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t SubsystemShape::total(std::span<const std::size_t> factors) const {
  std::size_t n = 1;
  for (std::size_t f : factors) n *= dims_.at(f);
  return n;
}

std::vector<std::size_t> SubsystemShape::complement(std::span<const std::size_t> factors) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < dims_.size(); ++f)
    if (std::find(factors.begin(), factors.end(), f) == factors.end()) out.push_back(f);
  return out;
}

std::vector<std::size_t> subsystem_offsets(const SubsystemShape& shape,
                                           std::span<const std::size_t> factors) {
  const auto& dims = shape.dims();
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) strides[f - 1] = strides[f] * dims[f];

  std::vector<std::size_t> offsets{0};
  for (std::size_t f : factors) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims.at(f));
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < dims[f]; ++digit) next.push_back(base + digit * strides[f]);
    offsets = std::move(next);
  }
  return offsets;
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::size_t work = out.rows() * out.cols();
  if (use_parallel(work))
    kernels::parallel::kron(a.data(), a.rows(), a.cols(), b.data(), b.rows(), b.cols(), out.data());
  else
    kernels::serial::kron(a.data(), a.rows(), a.cols(), b.data(), b.rows(), b.cols(), out.data());
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::span<const std::size_t> traced) {
  require_square(m, "partial_trace");
  if (shape.total() != m.rows())
    throw ShapeError("partial_trace: shape product " + std::to_string(shape.total()) +
                     " does not match matrix dimension " + std::to_string(m.rows()));
  const auto traced_sorted = checked_factor_list(shape, traced);
  if (traced_sorted.empty()) throw ShapeError("partial_trace: nothing to trace");
  if (traced_sorted.size() == shape.factor_count())
    throw ShapeError("partial_trace: traced set covers all factors");

  const auto kept = shape.complement(traced_sorted);
  const auto kept_off = subsystem_offsets(shape, kept);
  const auto traced_off = subsystem_offsets(shape, traced_sorted);
  ComplexMatrix out(kept_off.size(), kept_off.size());
  const std::size_t work = kept_off.size() * kept_off.size() * traced_off.size();
  if (use_parallel(work))
    kernels::parallel::partial_trace(m.data(), kept_off, traced_off, out.data());
  else
    kernels::serial::partial_trace(m.data(), kept_off, traced_off, out.data());
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> traced) {
  return partial_trace(m, shape, std::span<const std::size_t>(traced.begin(), traced.size()));
}

ComplexMatrix embed(const ComplexMatrix& op, const SubsystemShape& shape,
                    std::span<const std::size_t> factors) {
  require_square(op, "embed");
  checked_factor_list(shape, factors);
  if (shape.total(factors) != op.rows()) throw ShapeError("embed: operator/factor size mismatch");
  const auto rest = shape.complement(factors);
  const auto op_off = subsystem_offsets(shape, factors);
  const auto rest_off = subsystem_offsets(shape, rest);
  const std::size_t n = shape.total();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < op_off.size(); ++i)
    for (std::size_t j = 0; j < op_off.size(); ++j) {
      const Complex v = op(i, j);
      if (v == Complex{}) continue;
      for (std::size_t k : rest_off) out(op_off[i] + k, op_off[j] + k) = v;
    }
  return out;
}

Complex trace(const ComplexMatrix& m) {
  require_square(m, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (Complex& z : out.data()) z = std::conj(z);
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return conjugate(transpose(m)); }

ComplexMatrix max_ent_state(std::size_t d) {
  if (d == 0) throw ShapeError("max_ent_state: d must be >= 1");
  ComplexMatrix v(d * d, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) v(j * d + j, 0) = amp;
  return v;
}

ComplexMatrix outer(const ComplexMatrix& v) {
  if (v.cols() != 1) throw ShapeError("outer: expected a column vector");
  return v * adjoint(v);
}

// ---------------------------------------------------------------------------
// Spectral checks

double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "dist");
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

double max_abs(const ComplexMatrix& m) {
  double d = 0.0;
  for (const Complex& z : m.data()) d = std::max(d, std::abs(z));
  return d;
}

bool is_hermitian(const ComplexMatrix& m, Tolerance tol) {
  require_square(m, "is_hermitian");
  return dist(m, adjoint(m)) <= tol.eps();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double hermitian_tol) {
  require_square(m, "hermitian_eigenvalues");
  if (dist(m, adjoint(m)) > hermitian_tol)
    throw PreconditionError("hermitian_eigenvalues: matrix is not Hermitian");
  Eigen::MatrixXcd e = to_eigen(m);
  // Symmetrize so the solver sees an exactly Hermitian input.
  e = (0.5 * (e + e.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigen solver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

bool is_psd(const ComplexMatrix& m, Tolerance tol) {
  require_square(m, "is_psd");
  if (!is_hermitian(m, tol)) return false;
  return hermitian_eigenvalues(m, tol.eps()).front() >= -tol.eps();
}

bool is_unitary(const ComplexMatrix& m, Tolerance tol) {
  require_square(m, "is_unitary");
  return dist(adjoint(m) * m, ComplexMatrix::identity(m.rows())) <= tol.eps();
}

bool is_density(const ComplexMatrix& m, Tolerance tol) {
  return is_psd(m, tol) && std::abs(trace(m) - 1.0) <= tol.eps();
}

std::size_t numerical_rank(const ComplexMatrix& m, double threshold) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const Eigen::VectorXd& s = svd.singularValues();
  return static_cast<std::size_t>((s.array() > threshold).count());
}

Complex root_of_unity(long long k, long long n) {
  if (n <= 0) throw std::invalid_argument("root_of_unity: n must be positive");
  const long long r = ((k % n) + n) % n;
  if ((4 * r) % n == 0) {
    switch ((4 * r) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

std::string describe_shape(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace rsplab
