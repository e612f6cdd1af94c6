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
#include "qcoh/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

void require(bool ok, const char *invariant, const std::string &message) {
  if (!ok) throw ValidationError(invariant, message);
}

std::string pair_str(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(data_.size() == rows * cols, "dims",
          "matrix entry count " + std::to_string(data_.size()) + " != " +
              std::to_string(rows) + "x" + std::to_string(cols));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    require(row.size() == cols_, "dims", "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto &z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto &z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
  require(v.size() == cols_, "dims", "matrix-vector size mismatch");
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "dims", "matrix sum size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "dims",
          "matrix difference size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scalar) {
  for (auto &z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  require(a.cols_ == b.rows_, "dims", "matrix product size mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex x = a(r, k);
      if (x == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += x * b(k, c);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector out;
  out.reserve(a.size() * b.size());
  for (const auto &x : a)
    for (const auto &y : b) out.push_back(x * y);
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  require(a.size() == b.size(), "dims", "inner product size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto &z : v) s += std::norm(z);
  return s;
}

std::optional<std::pair<std::size_t, std::size_t>> hermiticity_violation(
    const ComplexMatrix &m, double tol) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return std::pair{r, c};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

constexpr double kOffDiagonalTol = 1e-13;
constexpr int kMaxSweeps = 100;

}  // namespace

int jacobi_inplace(std::span<Complex> a, std::size_t n, std::span<Complex> vectors) {
  const auto at = [&](std::size_t r, std::size_t c) -> Complex & { return a[r * n + c]; };
  const bool want_vectors = !vectors.empty();
  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    at(r, r) = at(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (at(r, c) + std::conj(at(c, r)));
      at(r, c) = avg;
      at(c, r) = std::conj(avg);
    }
  }
  for (const auto &z : a.first(n * n)) scale += std::norm(z);
  const double threshold = kOffDiagonalTol * std::sqrt(scale);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) off += 2.0 * std::norm(at(r, c));
    if (std::sqrt(off) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double tau = (at(q, q).real() - at(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cph = std::conj(phase);
        // Columns: A <- A J with J = [[c, s], [-s e*, c e*]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = c * akp - s * cph * akq;
          at(k, q) = s * akp + c * cph * akq;
        }
        // Rows: A <- J^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = c * apk - s * phase * aqk;
          at(q, k) = s * apk + c * phase * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            Complex &vkp = vectors[k * n + p];
            Complex &vkq = vectors[k * n + q];
            const Complex x = vkp, y = vkq;
            vkp = c * x - s * cph * y;
            vkq = s * x + c * cph * y;
          }
        }
      }
    }
  }
  return sweep;
}

namespace {

void check_hermitian_input(const ComplexMatrix &m, double hermitian_tol) {
  if (!m.is_square()) throw ValidationError("dims", "eigendecomposition needs a square matrix");
  if (auto bad = hermiticity_violation(m, hermitian_tol)) {
    throw ValidationError("hermitian", "matrix is not Hermitian at entries " +
                                           pair_str(bad->first, bad->second) + " and " +
                                           pair_str(bad->second, bad->first));
  }
}

EigenSystem jacobi(const ComplexMatrix &m, double hermitian_tol, bool want_vectors) {
  check_hermitian_input(m, hermitian_tol);
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();
  EigenSystem out;
  out.sweeps = jacobi_inplace(a.data(), n, want_vectors ? v.data() : std::span<Complex>{});

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(order[i], order[i]).real();
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix &m, double hermitian_tol) {
  return jacobi(m, hermitian_tol, true);
}

RealVector hermitian_eigenvalues(const ComplexMatrix &m, double hermitian_tol) {
  return jacobi(m, hermitian_tol, false).values;
}

double trace_norm(const ComplexMatrix &m) {
  if (!m.is_square()) throw ValidationError("dims", "trace norm needs a square matrix");
  const double tol = 1e-12 * std::max(1.0, m.max_abs());
  if (!hermiticity_violation(m, tol)) {
    double s = 0.0;
    for (double v : hermitian_eigenvalues(m, tol)) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : hermitian_eigenvalues(m.adjoint() * m, 1e-9 * std::max(1.0, m.max_abs())))
    s += std::sqrt(std::max(0.0, v));
  return s;
}

// ---------------------------------------------------------------------------
// States

PureState::PureState(ComplexVector amplitudes, const Tolerances &tol)
    : amplitudes_(std::move(amplitudes)) {
  require(!amplitudes_.empty(), "dims", "pure state must have dimension >= 1");
  for (const auto &z : amplitudes_)
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "finite",
            "pure state amplitude is not finite");
  const double n = norm2(amplitudes_);
  require(std::abs(n - 1.0) <= tol.norm, "norm",
          "pure state squared norm is " + std::to_string(n) + ", expected 1");
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double n = std::sqrt(norm2(amplitudes));
  require(n > 0.0 && std::isfinite(n), "norm", "cannot normalize the zero vector");
  for (auto &z : amplitudes) z /= n;
  Tolerances loose;
  loose.norm = 1e-12;
  return PureState(std::move(amplitudes), loose);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  require(index < dim, "dims", "basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

BipartitePureState::BipartitePureState(BipartiteDims dims, ComplexVector amplitudes,
                                       const Tolerances &tol)
    : dims_(dims) {
  require(dims.b >= 1 && dims.a >= 1, "dims", "bipartite dimensions must be positive");
  require(amplitudes.size() == dims.total(), "dims",
          "bipartite amplitude count " + std::to_string(amplitudes.size()) + " != " +
              std::to_string(dims.b) + "*" + std::to_string(dims.a));
  const PureState checked(std::move(amplitudes), tol);
  amplitudes_.assign(checked.amplitudes().begin(), checked.amplitudes().end());
}

BipartitePureState::BipartitePureState(BipartiteDims dims, const PureState &state)
    : dims_(dims), amplitudes_(state.amplitudes().begin(), state.amplitudes().end()) {
  require(dims.b >= 1 && dims.a >= 1 && state.dim() == dims.total(), "dims",
          "pure state dimension does not factor as d_B * d_A");
}

BipartitePureState BipartitePureState::normalized(BipartiteDims dims, ComplexVector amplitudes) {
  require(amplitudes.size() == dims.total(), "dims", "bipartite amplitude count mismatch");
  return BipartitePureState(dims, PureState::normalized(std::move(amplitudes)));
}

ComplexMatrix BipartitePureState::coefficients() const {
  return ComplexMatrix(dims_.b, dims_.a, amplitudes_);
}

PureState BipartitePureState::as_pure() const {
  Tolerances loose;
  loose.norm = 1e-6;
  return PureState(amplitudes_, loose);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerances &tol)
    : matrix_(std::move(matrix)) {
  require(matrix_.is_square() && matrix_.rows() >= 1, "dims",
          "density matrix must be square and non-empty");
  for (const auto &z : matrix_.data())
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "finite",
            "density matrix entry is not finite");
  if (auto bad = hermiticity_violation(matrix_, tol.hermitian)) {
    throw ValidationError("hermitian", "density matrix is not Hermitian at entries " +
                                           pair_str(bad->first, bad->second) + " and " +
                                           pair_str(bad->second, bad->first));
  }
  const double tr = matrix_.trace().real();
  require(std::abs(tr - 1.0) <= tol.trace, "trace",
          "density matrix trace is " + std::to_string(tr) + ", expected 1");
  const RealVector ev = hermitian_eigenvalues(matrix_, tol.hermitian);
  require(ev.back() >= -tol.psd, "psd",
          "density matrix has negative eigenvalue " + std::to_string(ev.back()));
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix matrix) {
  DensityMatrix rho;
  rho.matrix_ = std::move(matrix);
  return rho;
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> psi) {
  return unchecked(ComplexMatrix::outer(psi, psi));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return unchecked(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

// ---------------------------------------------------------------------------
// Bipartite operations

namespace {

void require_dims(const ComplexMatrix &m, BipartiteDims dims) {
  require(dims.b >= 1 && dims.a >= 1 && m.rows() == dims.total() && m.cols() == dims.total(),
          "dims",
          "matrix of size " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
              " does not factor as " + std::to_string(dims.b) + "*" + std::to_string(dims.a));
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix &rho, BipartiteDims dims, Subsystem keep) {
  const ComplexMatrix &m = rho.matrix();
  require_dims(m, dims);
  const std::size_t db = dims.b, da = dims.a;
  if (keep == Subsystem::B) {
    ComplexMatrix out(db, db);
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t jp = 0; jp < db; ++jp) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < da; ++k) s += m(j * da + k, jp * da + k);
        out(j, jp) = s;
      }
    return DensityMatrix::unchecked(std::move(out));
  }
  ComplexMatrix out(da, da);
  for (std::size_t k = 0; k < da; ++k)
    for (std::size_t kp = 0; kp < da; ++kp) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < db; ++j) s += m(j * da + k, j * da + kp);
      out(k, kp) = s;
    }
  return DensityMatrix::unchecked(std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, BipartiteDims dims, Subsystem on) {
  require_dims(m, dims);
  const std::size_t db = dims.b, da = dims.a;
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t k = 0; k < da; ++k)
      for (std::size_t jp = 0; jp < db; ++jp)
        for (std::size_t kp = 0; kp < da; ++kp) {
          const std::size_t r = j * da + k, c = jp * da + kp;
          out(r, c) = on == Subsystem::A ? m(j * da + kp, jp * da + k)
                                         : m(jp * da + k, j * da + kp);
        }
  return out;
}

ComplexMatrix complete_to_unitary(const ComplexMatrix &columns) {
  const std::size_t n = columns.rows();
  std::vector<ComplexVector> basis;
  for (std::size_t c = 0; c < columns.cols(); ++c) basis.push_back(columns.column(c));
  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    ComplexVector v(n);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &b : basis) {
        const Complex proj = inner(b, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * b[i];
      }
    const double len = std::sqrt(norm2(v));
    if (len < 1e-8) continue;
    for (auto &z : v) z /= len;
    basis.push_back(std::move(v));
  }
  ComplexMatrix out(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) out(r, c) = basis[c][r];
  return out;
}

namespace {

// Vectors below this norm are treated as absent and replaced by an
// orthonormal completion; their weight is below 1e-24.
constexpr double kNegligibleNorm = 1e-12;

ComplexMatrix orthonormal_fill(const std::vector<ComplexVector> &vectors, std::size_t dim,
                               std::size_t count) {
  // vectors[i] is either unit length or empty (to be filled).
  ComplexMatrix out(dim, count);
  std::vector<ComplexVector> kept;
  for (const auto &v : vectors)
    if (!v.empty()) kept.push_back(v);
  ComplexMatrix seed(dim, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) seed(r, c) = kept[c][r];
  const ComplexMatrix full = complete_to_unitary(seed);
  std::size_t next_fill = kept.size();
  for (std::size_t i = 0; i < count; ++i) {
    ComplexVector col;
    if (!vectors[i].empty()) {
      col = vectors[i];
    } else {
      col = full.column(next_fill++);
    }
    for (std::size_t r = 0; r < dim; ++r) out(r, i) = col[r];
  }
  return out;
}

}  // namespace

SchmidtDecomposition schmidt_decomposition(const BipartitePureState &psi) {
  const BipartiteDims dims = psi.dims();
  const ComplexMatrix c = psi.coefficients();
  const std::size_t r = std::min(dims.b, dims.a);
  // Eigenvectors of the smaller reduced state; partner vectors by back-solve.
  const bool via_b = dims.b <= dims.a;
  const ComplexMatrix reduced = via_b ? c * c.adjoint() : c.transpose() * c.adjoint().transpose();
  const EigenSystem eig = hermitian_eig(reduced, 1e-9);

  struct Term {
    double weight;
    ComplexVector small_side;
    ComplexVector big_side;  // unnormalized partner
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < r; ++i) {
    ComplexVector e = eig.vectors.column(i);
    ComplexVector partner;
    if (via_b) {
      // right_i = C^T conj(l_i)
      ComplexVector ce(e.size());
      for (std::size_t j = 0; j < e.size(); ++j) ce[j] = std::conj(e[j]);
      partner = c.transpose().apply(ce);
    } else {
      // left_i = C conj(r_i)
      ComplexVector ce(e.size());
      for (std::size_t j = 0; j < e.size(); ++j) ce[j] = std::conj(e[j]);
      partner = c.apply(ce);
    }
    terms.push_back({norm2(partner), std::move(e), std::move(partner)});
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term &x, const Term &y) { return x.weight > y.weight; });

  const std::size_t big_dim = via_b ? dims.a : dims.b;
  std::vector<ComplexVector> small_cols, big_cols;
  std::vector<double> lambda;
  for (auto &t : terms) {
    const double len = std::sqrt(t.weight);
    small_cols.push_back(t.small_side);
    if (len > kNegligibleNorm) {
      for (auto &z : t.big_side) z /= len;
      big_cols.push_back(std::move(t.big_side));
      lambda.push_back(t.weight);
    } else {
      big_cols.emplace_back();
      lambda.push_back(0.0);
    }
  }
  const ComplexMatrix small = orthonormal_fill(small_cols, via_b ? dims.b : dims.a, r);
  const ComplexMatrix big = orthonormal_fill(big_cols, big_dim, r);
  SchmidtDecomposition out{ProbVector::unchecked(std::move(lambda)), {}, {}};
  out.left = via_b ? small : big;
  out.right = via_b ? big : small;
  return out;
}

ProbVector schmidt_coefficients(const BipartitePureState &psi) {
  const BipartiteDims dims = psi.dims();
  const ComplexMatrix c = psi.coefficients();
  const ComplexMatrix reduced =
      dims.b <= dims.a ? c * c.adjoint() : c.transpose() * c.adjoint().transpose();
  RealVector ev = hermitian_eigenvalues(reduced, 1e-9);
  for (auto &v : ev) v = std::max(0.0, v);
  return ProbVector::unchecked(std::move(ev));
}

}  // namespace qcoh
