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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcoh/majorize.hpp"
#include "qcoh/qstate.hpp"

namespace qcoh {

/// μ_j = |ψ_j|² in basis order.
ProbVector coherence_vector(const PureState &psi);
ProbVector coherence_vector(std::span<const Complex> amplitudes);

/// C_f(ψ) = f(μ(ψ)). gc must carry the state's dimension.
double c_f_pure(const Functional &f, const PureState &psi);

/// E_f(Ψ) = f(λ(Ψ)). gc must carry min(d_B, d_A).
double e_f_pure(const Functional &f, const BipartitePureState &psi);

class RoofKind {
 public:
  static RoofKind coherence() { return RoofKind(false, {}); }
  static RoofKind entanglement(BipartiteDims dims) { return RoofKind(true, dims); }

  bool is_entanglement() const noexcept { return entanglement_; }
  BipartiteDims dims() const noexcept { return dims_; }

 private:
  RoofKind(bool entanglement, BipartiteDims dims) : entanglement_(entanglement), dims_(dims) {}
  bool entanglement_;
  BipartiteDims dims_;
};

struct RoofOptions {
  std::size_t ensemble_size = 0;  // 0 selects rank(ρ)²
  std::size_t restarts = 32;
  std::size_t max_iters = 500;    // sweeps per restart
  double tol = 1e-9;              // per-sweep improvement that counts as converged
  std::uint64_t seed = 0;
  unsigned threads = 1;           // 0 selects the hardware concurrency
};

struct EnsembleMember {
  double weight = 0.0;
  PureState state;
};

/// Best decomposition found. `value` is an upper bound on the convex roof.
struct RoofEstimate {
  double value = 0.0;
  std::vector<EnsembleMember> ensemble;
  bool converged = false;
  std::size_t iterations = 0;  // sweeps used by the winning restart
  std::size_t restarts = 0;
  std::size_t best_restart = 0;
};

/// Minimizes Σ_k w_k · (pure-state monotone of ψ_k) over decompositions
/// ρ = Σ_k w_k |ψ_k><ψ_k| of a fixed size. Restart 0 starts from the
/// eigen-ensemble; later restarts from random isometries. Deterministic for
/// a fixed seed regardless of the thread count.
RoofEstimate convex_roof(const Functional &f, const DensityMatrix &rho, const RoofKind &kind,
                         const RoofOptions &opts = {});

}  // namespace qcoh
