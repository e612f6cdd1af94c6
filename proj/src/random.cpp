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
#include "qcoh/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace qcoh::random {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

ComplexVector gaussian_vector(Rng &rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  for (auto &z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return v;
}

PureState random_pure(Rng &rng, std::size_t dim) {
  return PureState::normalized(gaussian_vector(rng, dim));
}

BipartitePureState random_bipartite(Rng &rng, BipartiteDims dims) {
  return BipartitePureState::normalized(dims, gaussian_vector(rng, dims.total()));
}

ComplexMatrix random_isometry(Rng &rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix out(rows, cols);
  std::vector<ComplexVector> done;
  for (std::size_t c = 0; c < cols; ++c) {
    ComplexVector v;
    double len = 0.0;
    do {
      v = gaussian_vector(rng, rows);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto &b : done) {
          const Complex proj = inner(b, v);
          for (std::size_t i = 0; i < rows; ++i) v[i] -= proj * b[i];
        }
      len = std::sqrt(norm2(v));
    } while (len < 1e-6);
    for (auto &z : v) z /= len;
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = v[r];
    done.push_back(std::move(v));
  }
  return out;
}

ComplexMatrix haar_unitary(Rng &rng, std::size_t n) { return random_isometry(rng, n, n); }

DensityMatrix random_density(Rng &rng, std::size_t dim, std::size_t rank) {
  if (rank == 0) rank = dim;
  ComplexMatrix g(dim, rank, gaussian_vector(rng, dim * rank));
  ComplexMatrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return DensityMatrix::unchecked(std::move(rho));
}

ProbVector random_prob(Rng &rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto &x : p) s += (x = expo(rng));
  for (auto &x : p) x /= s;
  return ProbVector::unchecked(std::move(p));
}

PureState random_majorizing(Rng &rng, const PureState &psi, std::size_t dout) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<double> p(std::max(psi.dim(), dout), 0.0);
  for (std::size_t i = 0; i < psi.dim(); ++i) p[i] = std::norm(psi[i]);
  std::sort(p.begin(), p.end(), std::greater<>());
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  for (std::size_t step = 0; step < 3 * p.size(); ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    if (p[i] < p[j]) std::swap(i, j);
    const double moved = unit(rng) * p[j];
    p[i] += moved;
    p[j] -= moved;
  }
  std::sort(p.begin(), p.end(), std::greater<>());
  for (std::size_t r = dout; r < p.size(); ++r) {
    p[0] += p[r];
    p[r] = 0.0;
  }
  p.resize(dout);
  std::shuffle(p.begin(), p.end(), rng);
  ComplexVector amps(dout);
  for (std::size_t i = 0; i < dout; ++i) amps[i] = std::polar(std::sqrt(p[i]), angle(rng));
  return PureState::normalized(std::move(amps));
}

}  // namespace qcoh::random
