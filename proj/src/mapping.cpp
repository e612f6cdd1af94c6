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
#include "qcoh/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcoh/errors.hpp"
#include "qcoh/random.hpp"

namespace qcoh {

ComplexMatrix ucnot(std::size_t db, std::size_t da) {
  if (db < 1 || da < db)
    throw ValidationError("dims", "generalized CNOT needs d_A >= d_B >= 1, got d_B=" +
                                      std::to_string(db) + " d_A=" + std::to_string(da));
  ComplexMatrix u(db * da, db * da);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t k = 0; k < da; ++k) {
      const std::size_t target = k < db ? (j + k) % db : k;
      u(j * da + target, j * da + k) = 1.0;
    }
  return u;
}

BipartitePureState cnot_embedding(const PureState &psi) {
  const std::size_t d = psi.dim();
  ComplexVector ancilla(d, 0.0);
  ancilla[0] = 1.0;
  return BipartitePureState({d, d}, ucnot(d, d).apply(kron(psi.amplitudes(), ancilla)));
}

DensityMatrix maximally_correlated(const DensityMatrix &rho) {
  const std::size_t d = rho.dim();
  ComplexMatrix m(d * d, d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m(j * d + j, k * d + k) = rho(j, k);
  return DensityMatrix::unchecked(std::move(m));
}

CoherenceSchmidtReport coherence_schmidt_report(const BipartitePureState &psi) {
  const auto dims = psi.dims();
  CoherenceSchmidtReport r;
  r.mu = coherence_vector(psi.amplitudes());
  r.lambda = schmidt_coefficients(psi);
  r.mu_majorized_by_lambda = majorizes(r.mu, r.lambda);
  r.slack = majorization_slack(r.mu, r.lambda);
  r.equivalent = r.mu_majorized_by_lambda && majorizes(r.lambda, r.mu);

  double max_abs = 0.0;
  for (const Complex &c : psi.amplitudes()) max_abs = std::max(max_abs, std::abs(c));
  const double zero = kFormZeroTol * max_abs;
  constexpr double kSchmidtRankTol = 1e-12;
  r.schmidt_rank = r.lambda.support_size(kSchmidtRankTol);

  std::vector<std::size_t> row_count(dims.b, 0), col_count(dims.a, 0);
  struct Entry {
    std::size_t j, k;
    Complex c;
  };
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < dims.b; ++j)
    for (std::size_t k = 0; k < dims.a; ++k) {
      const Complex c = psi.amplitudes()[j * dims.a + k];
      if (std::abs(c) <= zero) continue;
      ++row_count[j];
      ++col_count[k];
      entries.push_back({j, k, c});
    }
  r.coherence_rank = entries.size();
  r.permuted_schmidt_form =
      std::ranges::all_of(row_count, [](std::size_t n) { return n <= 1; }) &&
      std::ranges::all_of(col_count, [](std::size_t n) { return n <= 1; });
  if (!r.permuted_schmidt_form) return r;

  // Largest amplitudes first so that position j carries λ↓_j.
  std::ranges::stable_sort(entries, [](const Entry &x, const Entry &y) {
    return std::norm(x.c) > std::norm(y.c);
  });
  std::vector<bool> used_b(dims.b, false), used_a(dims.a, false);
  r.phases.assign(std::min(dims.b, dims.a), 0.0);
  for (std::size_t j = 0; j < entries.size(); ++j) {
    r.perm_b.push_back(entries[j].j);
    r.perm_a.push_back(entries[j].k);
    used_b[entries[j].j] = used_a[entries[j].k] = true;
    r.phases[j] = std::arg(entries[j].c);
  }
  for (std::size_t j = 0; j < dims.b; ++j)
    if (!used_b[j]) r.perm_b.push_back(j);
  for (std::size_t k = 0; k < dims.a; ++k)
    if (!used_a[k]) r.perm_a.push_back(k);
  return r;
}

LocalUnitaryResult min_coherence_over_local_unitaries(const Functional &f,
                                                      const BipartitePureState &psi,
                                                      const LocalUnitaryOptions &opts) {
  const auto dims = psi.dims();
  if (f.kind() == FunctionalKind::GeneralizedConcurrence && f.dimension() != dims.total())
    throw ValidationError("dims", "gc on the product basis needs dimension " +
                                      std::to_string(dims.total()));
  LocalUnitaryResult out;
  const auto report = coherence_schmidt_report(psi);
  if (report.permuted_schmidt_form) {
    // Exact permutations and phases; identity when already in Schmidt form.
    out.value = evaluate(f, report.lambda);
    out.u_b = ComplexMatrix(dims.b, dims.b);
    out.u_a = ComplexMatrix(dims.a, dims.a);
    for (std::size_t j = 0; j < dims.b; ++j) out.u_b(j, report.perm_b[j]) = 1.0;
    for (std::size_t k = 0; k < dims.a; ++k)
      out.u_a(k, report.perm_a[k]) = k < report.phases.size() ? std::polar(1.0, -report.phases[k])
                                                               : Complex(1.0);
  } else {
    const SchmidtDecomposition sd = schmidt_decomposition(psi);
    out.value = evaluate(f, sd.coefficients);
    out.u_b = complete_to_unitary(sd.left).adjoint();
    out.u_a = complete_to_unitary(sd.right).adjoint();
  }
  const auto local = kron(out.u_b, out.u_a);
  out.rotated_coherence = c_f_pure(f, PureState::normalized(local.apply(psi.amplitudes())));

  if (opts.samples > 0) {
    auto rng = random::make_rng(opts.seed);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < opts.samples; ++s) {
      const auto u = kron(random::haar_unitary(rng, dims.b), random::haar_unitary(rng, dims.a));
      best = std::min(best, c_f_pure(f, PureState::normalized(u.apply(psi.amplitudes()))));
    }
    out.sampled_min = best;
  }
  return out;
}

RoofEqualityCheck roof_equality_check(const Functional &f, const DensityMatrix &rho,
                                      const RoofOptions &opts) {
  const std::size_t d = rho.dim();
  RoofEqualityCheck out;
  out.coherence = convex_roof(f, rho, RoofKind::coherence(), opts);
  out.entanglement =
      convex_roof(f, maximally_correlated(rho), RoofKind::entanglement({d, d}), opts);
  out.gap = std::abs(out.coherence.value - out.entanglement.value);
  return out;
}

}  // namespace qcoh
