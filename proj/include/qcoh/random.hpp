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
#include <random>

#include "qcoh/qstate.hpp"

namespace qcoh::random {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Streams let parallel workers
/// draw reproducible sequences regardless of scheduling.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

ComplexVector gaussian_vector(Rng &rng, std::size_t n);
PureState random_pure(Rng &rng, std::size_t dim);
BipartitePureState random_bipartite(Rng &rng, BipartiteDims dims);
/// Haar-like unitary from Gram–Schmidt on a complex Gaussian matrix.
ComplexMatrix haar_unitary(Rng &rng, std::size_t n);
/// rows × cols matrix with orthonormal columns (rows ≥ cols).
ComplexMatrix random_isometry(Rng &rng, std::size_t rows, std::size_t cols);
/// G G^† / tr, G a dim × rank complex Gaussian matrix.
DensityMatrix random_density(Rng &rng, std::size_t dim, std::size_t rank = 0);
/// Uniform on the simplex.
ProbVector random_prob(Rng &rng, std::size_t n);
/// Random target of dimension dout whose coherence vector majorizes that of
/// psi: random mass moves toward larger entries, then phases are drawn.
PureState random_majorizing(Rng &rng, const PureState &psi, std::size_t dout);

}  // namespace qcoh::random
