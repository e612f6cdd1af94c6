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

#include <cstdint>
#include <optional>
#include <vector>

#include "qcoh/monotones.hpp"

namespace qcoh {

/// Generalized CNOT on C^{d_B} ⊗ C^{d_A}: |j,k> -> |j, (j+k) mod d_B> for
/// k < d_B, identity for k >= d_B. Requires d_A >= d_B.
ComplexMatrix ucnot(std::size_t db, std::size_t da);

/// U(ψ ⊗ |0>) = Σ_j ψ_j |jj>, with d_A = d_B = dim(ψ).
BipartitePureState cnot_embedding(const PureState &psi);

/// Σ_jk ρ_jk |jj><kk| on (d, d).
DensityMatrix maximally_correlated(const DensityMatrix &rho);

/// Compares the coherence vector of a bipartite pure state, read as a plain
/// vector in the product basis, with its Schmidt vector.
struct CoherenceSchmidtReport {
  ProbVector mu;
  ProbVector lambda;
  bool mu_majorized_by_lambda = false;
  double slack = 0.0;  // minimum prefix difference of λ↓ over μ↓
  std::size_t coherence_rank = 0;
  std::size_t schmidt_rank = 0;
  bool equivalent = false;
  // Ψ = Σ_j e^{iθ_j} sqrt(λ_j) |π_B(j), π_A(j)>, detected when the coefficient
  // matrix has at most one nonzero per row and column.
  bool permuted_schmidt_form = false;
  std::vector<std::size_t> perm_b;  // permutation of 0..d_B-1
  std::vector<std::size_t> perm_a;  // permutation of 0..d_A-1
  std::vector<double> phases;       // θ_j, j < min(d_B, d_A)
};

inline constexpr double kFormZeroTol = 1e-10;  // relative to max |c_jk|

CoherenceSchmidtReport coherence_schmidt_report(const BipartitePureState &psi);

struct LocalUnitaryOptions {
  std::size_t samples = 0;  // random (U_B, U_A) pairs to test; 0 skips sampling
  std::uint64_t seed = 0;
};

struct LocalUnitaryResult {
  double value = 0.0;  // f(λ), the minimum of C_f((U_B ⊗ U_A)Ψ)
  ComplexMatrix u_b;   // rotations taking Ψ to Σ sqrt(λ_j) |jj>
  ComplexMatrix u_a;
  double rotated_coherence = 0.0;  // C_f of (u_b ⊗ u_a)Ψ, recomputed
  std::optional<double> sampled_min;
};

/// f acts on the product-basis coherence vector, so gc must carry d_B·d_A.
LocalUnitaryResult min_coherence_over_local_unitaries(const Functional &f,
                                                      const BipartitePureState &psi,
                                                      const LocalUnitaryOptions &opts = {});

struct RoofEqualityCheck {
  RoofEstimate coherence;      // convex roof of ρ
  RoofEstimate entanglement;   // convex roof of ρ_MC
  double gap = 0.0;
};

/// Runs both roofs on ρ and on its maximally correlated copy. gc carries d.
RoofEqualityCheck roof_equality_check(const Functional &f, const DensityMatrix &rho,
                                      const RoofOptions &opts = {});

}  // namespace qcoh
