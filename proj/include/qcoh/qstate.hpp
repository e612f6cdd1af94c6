// Copyright 2026 The qcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qcoh/prob_vector.hpp"

namespace qcoh {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Validation tolerances applied when states are constructed from raw data.
struct Tolerances {
  double hermitian = 1e-9;
  double psd = 1e-9;
  double trace = 1e-9;
  double norm = 1e-9;
};

/// Dense row-major complex matrix. Sizes in this library stay small (≤ 64).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |ket><bra|
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexVector apply(std::span<const Complex> v) const;
  ComplexVector column(std::size_t c) const;

  ComplexMatrix &operator+=(const ComplexMatrix &other);
  ComplexMatrix &operator-=(const ComplexMatrix &other);
  ComplexMatrix &operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
  friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm2(std::span<const Complex> v);                               // <v|v>

/// Returns the first (row, col) pair with |M_rc - conj(M_cr)| > tol, if any.
std::optional<std::pair<std::size_t, std::size_t>> hermiticity_violation(
    const ComplexMatrix &m, double tol);

struct EigenSystem {
  RealVector values;     // descending
  ComplexMatrix vectors;  // column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Throws ValidationError("hermitian") naming the
/// offending entry pair when the input is not Hermitian within `hermitian_tol`.
EigenSystem hermitian_eig(const ComplexMatrix &m, double hermitian_tol = 1e-9);

/// In-place Jacobi on a row-major n × n Hermitian buffer (no validation, no
/// sorting, no allocation). On return the diagonal holds the eigenvalues; if
/// \`vectors\` is non-empty it must hold an n × n matrix (usually identity) that
/// is right-multiplied by the accumulated rotations. Returns the sweep count.
int jacobi_inplace(std::span<Complex> a, std::size_t n, std::span<Complex> vectors = {});

/// Eigenvalues only (descending).
RealVector hermitian_eigenvalues(const ComplexMatrix &m, double hermitian_tol = 1e-9);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);

struct BipartiteDims {
  std::size_t b = 0;
  std::size_t a = 0;
  std::size_t total() const noexcept { return b * a; }
  friend bool operator==(const BipartiteDims &, const BipartiteDims &) = default;
};

enum class Subsystem { B, A };

class PureState {
 public:
  PureState() = default;
  /// Validates unit norm.
  explicit PureState(ComplexVector amplitudes, const Tolerances &tol = {});
  /// Rescales to unit norm. Throws on the zero vector.
  static PureState normalized(ComplexVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  ComplexVector amplitudes_;
};

/// Pure state on B ⊗ A, amplitudes indexed |jk> = j * d_A + k with j on B.
class BipartitePureState {
 public:
  BipartitePureState() = default;
  BipartitePureState(BipartiteDims dims, ComplexVector amplitudes,
                     const Tolerances &tol = {});
  BipartitePureState(BipartiteDims dims, const PureState &state);
  static BipartitePureState normalized(BipartiteDims dims, ComplexVector amplitudes);

  BipartiteDims dims() const noexcept { return dims_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  /// The d_B × d_A coefficient matrix c_jk.
  ComplexMatrix coefficients() const;
  /// The same amplitudes viewed as a single-system state.
  PureState as_pure() const;

 private:
  BipartiteDims dims_;
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Validates Hermiticity, positivity and unit trace.
  explicit DensityMatrix(ComplexMatrix matrix, const Tolerances &tol = {});
  /// Wraps a matrix that is a state by construction; no checks.
  static DensityMatrix unchecked(ComplexMatrix matrix);
  static DensityMatrix from_pure(std::span<const Complex> psi);
  static DensityMatrix from_pure(const PureState &psi) {
    return from_pure(psi.amplitudes());
  }
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix &matrix() const noexcept { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  ComplexMatrix matrix_;
};

DensityMatrix partial_trace(const DensityMatrix &rho, BipartiteDims dims, Subsystem keep);

/// Transpose on one tensor factor. Hermitian input gives Hermitian output.
ComplexMatrix partial_transpose(const ComplexMatrix &m, BipartiteDims dims,
                                Subsystem on = Subsystem::A);

struct SchmidtDecomposition {
  ProbVector coefficients;  // λ, descending, length min(d_B, d_A)
  ComplexMatrix left;       // d_B × r, orthonormal columns
  ComplexMatrix right;      // d_A × r, orthonormal columns
};

/// Ψ = Σ_i sqrt(λ_i) |left_i>|right_i>.
SchmidtDecomposition schmidt_decomposition(const BipartitePureState &psi);

/// Schmidt coefficients only, via the spectrum of the smaller reduced state.
ProbVector schmidt_coefficients(const BipartitePureState &psi);

/// Complete the given orthonormal columns to a unitary by Gram–Schmidt on
/// the standard basis.
ComplexMatrix complete_to_unitary(const ComplexMatrix &columns);

}  // namespace qcoh
