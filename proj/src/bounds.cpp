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
#include "qcoh/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcoh/errors.hpp"

namespace qcoh {

double c_l1(const DensityMatrix &rho) {
  double sum = 0.0;
  for (std::size_t j = 0; j < rho.dim(); ++j)
    for (std::size_t k = 0; k < rho.dim(); ++k)
      if (j != k) sum += std::abs(rho(j, k));
  return sum;
}

double negativity(const DensityMatrix &rho, BipartiteDims dims) {
  if (dims.total() != rho.dim())
    throw ValidationError("dims", "bipartite dims do not factor the state dimension " +
                                      std::to_string(rho.dim()));
  return trace_norm(partial_transpose(rho.matrix(), dims)) - 1.0;
}

// ---------------------------------------------------------------------------
// Robustness of coherence

namespace {

struct Cut {
  std::vector<double> weights;  // |v_i|²
  double rhs = 0.0;             // <v|ρ|v>
};

struct PackingSolution {
  std::vector<double> envelope;  // optimal d of the covering problem
  double value = 0.0;
};

// Dense simplex on max Σ b_c y_c s.t. Σ_c y_c w_c <= 1, y >= 0. Its dual is
// the restricted covering problem min Σ d_i s.t. w_c · d >= b_c, whose
// solution is read from the slack columns.
PackingSolution solve_packing(const std::vector<Cut> &cuts, std::size_t n) {
  const std::size_t m = cuts.size(), cols = m + n + 1, rhs = m + n;
  std::vector<double> t(n * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double & { return t[r * cols + c]; };
  std::vector<double> obj(cols, 0.0);
  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) at(i, c) = cuts[c].weights[i];
    at(i, m + i) = 1.0;
    at(i, rhs) = 1.0;
    basis[i] = m + i;
  }
  for (std::size_t c = 0; c < m; ++c) obj[c] = cuts[c].rhs;

  constexpr double kEps = 1e-12;
  const std::size_t dantzig_limit = 20 * (m + n);
  for (std::size_t iter = 0;; ++iter) {
    // Largest reduced cost first; Bland's rule once cycling becomes possible.
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c < m + n; ++c) {
      if (obj[c] <= kEps) continue;
      if (!enter || (iter < dantzig_limit && obj[c] > obj[*enter])) enter = c;
      if (iter >= dantzig_limit) break;
    }
    if (!enter) break;
    std::optional<std::size_t> leave;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double a = at(r, *enter);
      if (a <= kEps) continue;
      const double ratio = at(r, rhs) / a;
      if (!leave || ratio < best_ratio - kEps ||
          (ratio <= best_ratio + kEps && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!leave) throw ConvergenceError("robustness LP is unbounded", 0.0, 0.0);
    const std::size_t p = *leave, e = *enter;
    const double pivot = at(p, e);
    for (std::size_t c = 0; c < cols; ++c) at(p, c) /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == p) continue;
      const double factor = at(r, e);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= factor * at(p, c);
    }
    const double factor = obj[e];
    for (std::size_t c = 0; c < cols; ++c) obj[c] -= factor * at(p, c);
    basis[p] = e;
  }
  PackingSolution out;
  out.envelope.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.envelope[i] = -obj[m + i];
  out.value = -obj[rhs];
  return out;
}

ComplexMatrix envelope_gap(std::span<const double> d, const DensityMatrix &rho) {
  ComplexMatrix m = rho.matrix() * Complex(-1.0);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) += d[i];
  return m;
}

}  // namespace

RobustnessSolution robustness_coherence(const DensityMatrix &rho, const RobustnessOptions &opts) {
  const std::size_t n = rho.dim();
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i < n; ++i) {
    Cut c{std::vector<double>(n, 0.0), rho(i, i).real()};
    c.weights[i] = 1.0;
    cuts.push_back(std::move(c));
  }
  double lower = 0.0, upper = std::numeric_limits<double>::infinity();
  RobustnessSolution out;
  for (std::size_t round = 1;; ++round) {
    const PackingSolution lp = solve_packing(cuts, n);
    lower = std::max(lower, lp.value);
    const EigenSystem eig = hermitian_eig(envelope_gap(lp.envelope, rho));
    const double shift = std::max(0.0, -eig.values.back());
    const double candidate = lp.value + static_cast<double>(n) * shift;
    if (candidate < upper) {
      upper = candidate;
      out.certificate = lp.envelope;
      for (double &v : out.certificate) v += shift;
    }
    out.rounds = round;
    if (upper - lower <= opts.tol) break;
    for (std::size_t k = 0; k < n; ++k) {
      if (eig.values[k] >= 0.0) continue;
      Cut c{std::vector<double>(n), 0.0};
      const ComplexVector v = eig.vectors.column(k);
      for (std::size_t i = 0; i < n; ++i) c.weights[i] = std::norm(v[i]);
      c.rhs = inner(v, rho.matrix().apply(v)).real();
      cuts.push_back(std::move(c));
    }
    if (cuts.size() > opts.max_cuts)
      throw ConvergenceError("robustness solver exceeded " + std::to_string(opts.max_cuts) +
                                 " cuts",
                             lower - 1.0, upper - 1.0);
  }
  out.value = upper - 1.0;
  out.lower_bound = lower - 1.0;
  out.cuts = cuts.size();
  out.residual_min_eig = hermitian_eigenvalues(envelope_gap(out.certificate, rho)).back();
  return out;
}

// ---------------------------------------------------------------------------
// Product bound

ProductBound product_bound_check(std::span<const Complex> c) {
  const std::size_t d = c.size();
  ProductBound out;
  if (d == 0) throw ValidationError("dims", "product bound needs at least one number");
  std::vector<double> mod(d);
  for (std::size_t j = 0; j < d; ++j) mod[j] = std::abs(c[j]);
  double product = 1.0, sum = 0.0, sum_sq = 0.0;
  for (double m : mod) {
    product *= m;
    sum += m;
    sum_sq += m * m;
  }
  const double dd = static_cast<double>(d);
  out.lhs = dd * std::pow(product, 2.0 / dd);
  out.rhs = sum * sum - (dd - 1.0) * sum_sq;
  constexpr double kTol = 1e-12;
  out.holds = out.lhs >= out.rhs - kTol;
  if (d <= 2) {
    out.saturated = true;
    return out;
  }
  std::ranges::sort(mod, std::greater<>());
  const double scale = std::max(mod.front(), 1e-300);
  auto equal = [&](double a, double b) { return std::abs(a - b) <= kTol * scale; };
  const bool all_equal = equal(mod.front(), mod.back());
  const bool one_zero = equal(mod.front(), mod[d - 2]) && equal(mod.back(), 0.0);
  out.saturated = all_equal || one_zero;
  return out;
}

// ---------------------------------------------------------------------------
// Families

namespace {

constexpr double kFamilyTol = 1e-12;

void require_range(bool ok, const std::string &what) {
  if (!ok) throw ValidationError("parameter", what);
}

ComplexMatrix uniform_projector(std::size_t d) {
  return ComplexMatrix(d, d, std::vector<Complex>(d * d, Complex(1.0 / static_cast<double>(d))));
}

ComplexMatrix entangled_projector(std::size_t d) {
  ComplexMatrix m(d * d, d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m(j * d + j, k * d + k) = 1.0 / static_cast<double>(d);
  return m;
}

ComplexMatrix isotropic_matrix(std::size_t d, double f) {
  const ComplexMatrix phi = entangled_projector(d);
  const double dd = static_cast<double>(d * d);
  const double background = (1.0 - f) / (dd - 1.0);
  return phi * Complex(f - background) + ComplexMatrix::identity(d * d) * Complex(background);
}

}  // namespace

SymmetricFamily symmetric_family(std::size_t d, double p) {
  require_range(d >= 2, "symmetric family needs d >= 2");
  require_range(p >= 0.0 && p <= 1.0, "symmetric family needs 0 <= p <= 1");
  const double dd = static_cast<double>(d);
  SymmetricFamily out{
      DensityMatrix(uniform_projector(d) * Complex(p) +
                    ComplexMatrix::identity(d) * Complex((1.0 - p) / dd)),
      p + (1.0 - p) / dd, p * (dd - 1.0), p * (dd - 1.0),
      std::max(0.0, p * (dd - 1.0) - (dd - 2.0))};
  return out;
}

IsotropicFamily isotropic_family(std::size_t d, double fidelity) {
  require_range(d >= 2, "isotropic family needs d >= 2");
  const double dd = static_cast<double>(d);
  require_range(fidelity >= 1.0 / (dd * dd) - kFamilyTol && fidelity <= 1.0 + kFamilyTol,
                "isotropic family needs 1/d^2 <= F <= 1");
  const double f = std::clamp(fidelity, 1.0 / (dd * dd), 1.0);
  const double n = std::max(0.0, dd * f - 1.0);
  return {DensityMatrix(isotropic_matrix(d, f)), n, n, std::max(0.0, dd * f - (dd - 1.0))};
}

std::optional<double> match_symmetric(const DensityMatrix &rho) {
  const std::size_t d = rho.dim();
  if (d < 2) return std::nullopt;
  const double dd = static_cast<double>(d);
  const double p = rho(0, 1).real() * dd;
  if (p < -kFamilyTol || p > 1.0 + kFamilyTol) return std::nullopt;
  const double diag = 1.0 / dd;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex expected = j == k ? Complex(diag) : Complex(p / dd);
      if (std::abs(rho(j, k) - expected) > kFamilyTol) return std::nullopt;
    }
  return std::clamp(p, 0.0, 1.0);
}

std::optional<double> match_isotropic(const DensityMatrix &rho, BipartiteDims dims) {
  if (dims.b != dims.a || dims.total() != rho.dim() || dims.b < 2) return std::nullopt;
  const std::size_t d = dims.b;
  const ComplexMatrix phi = entangled_projector(d);
  const double f = (phi * rho.matrix()).trace().real();
  if ((isotropic_matrix(d, f) - rho.matrix()).max_abs() > kFamilyTol) return std::nullopt;
  return f;
}

std::optional<DensityMatrix> match_maximally_correlated(const DensityMatrix &rho,
                                                        BipartiteDims dims) {
  if (dims.b != dims.a || dims.total() != rho.dim()) return std::nullopt;
  const std::size_t d = dims.b;
  ComplexMatrix reduced(d, d);
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      const bool on = r % (d + 1) == 0 && c % (d + 1) == 0;
      if (on)
        reduced(r / (d + 1), c / (d + 1)) = rho(r, c);
      else if (std::abs(rho(r, c)) > kFamilyTol)
        return std::nullopt;
    }
  return DensityMatrix::unchecked(std::move(reduced));
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

double finish(BoundCertificate &cert) {
  double best = 0.0;
  for (const auto &[name, value] : cert.witnesses) best = std::max(best, value);
  cert.lower_bound = std::max(0.0, best - (static_cast<double>(cert.dimension) - 2.0));
  return cert.lower_bound;
}

void settle_tightness(BoundCertificate &cert, const CertifyOptions &opts) {
  if (cert.closed_form)
    cert.tight = std::abs(*cert.closed_form - cert.lower_bound) <= 1e-9;
  if (!cert.tight && cert.upper_estimate)
    cert.tight = *cert.upper_estimate - cert.lower_bound <= opts.meet_tol;
}

}  // namespace

BoundCertificate certify_cgc_lower(const DensityMatrix &rho, const CertifyOptions &opts) {
  const std::size_t d = rho.dim();
  if (d < 2) throw ValidationError("dims", "coherence certificates need d >= 2");
  BoundCertificate cert;
  cert.measure = "c_gc";
  cert.dimension = d;
  const RobustnessSolution rob = robustness_coherence(rho, opts.robustness);
  cert.witnesses = {{"c_l1", c_l1(rho)}, {"c_R", std::max(0.0, rob.lower_bound)}};
  finish(cert);
  if (const auto p = match_symmetric(rho)) {
    cert.family = "symmetric";
    cert.closed_form = symmetric_family(d, *p).c_gc;
  }
  if (opts.with_roof)
    cert.upper_estimate =
        convex_roof(Functional::gc(d), rho, RoofKind::coherence(), opts.roof).value;
  settle_tightness(cert, opts);
  return cert;
}

BoundCertificate certify_egc_lower(const DensityMatrix &rho, BipartiteDims dims,
                                   const CertifyOptions &opts) {
  if (dims.b != dims.a || dims.b < 2)
    throw ValidationError("dims", "entanglement certificates need square dims d x d, d >= 2");
  const double n = negativity(rho, dims);
  BoundCertificate cert;
  cert.measure = "e_gc";
  cert.dimension = dims.b;
  cert.witnesses = {{"negativity", std::max(0.0, n)}};
  if (const auto f = match_isotropic(rho, dims)) {
    const auto family = isotropic_family(dims.b, *f);
    cert.family = "isotropic";
    cert.witnesses.emplace_back("e_R", family.e_r);
    cert.closed_form = family.e_gc;
  } else if (const auto reduced = match_maximally_correlated(rho, dims)) {
    cert.family = "maximally_correlated";
    const RobustnessSolution rob = robustness_coherence(*reduced, opts.robustness);
    cert.witnesses.emplace_back("e_R", std::max(0.0, rob.lower_bound));
  }
  finish(cert);
  if (opts.with_roof)
    cert.upper_estimate = convex_roof(Functional::gc(dims.b), rho,
                                      RoofKind::entanglement(dims), opts.roof)
                              .value;
  settle_tightness(cert, opts);
  return cert;
}

}  // namespace qcoh
