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
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qcoh/errors.hpp"
#include "qcoh/mapping.hpp"
#include "qcoh/random.hpp"

using namespace qcoh;

namespace {

std::vector<Functional> catalog(std::size_t gc_dim) {
  return {Functional::shannon(), Functional::one_minus_max(), Functional::gc(gc_dim),
          Functional::renyi(0.0),  Functional::renyi(0.4),      Functional::tail(2)};
}

std::vector<std::size_t> shuffled(std::size_t n, random::Rng &rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("generalized CNOT") {
  const auto cnot = ucnot(2, 2);
  // |10> -> |11>, |11> -> |10>, index j*2+k.
  CHECK(cnot(3, 2) == Complex(1.0));
  CHECK(cnot(2, 3) == Complex(1.0));
  CHECK(cnot(0, 0) == Complex(1.0));
  CHECK(cnot(1, 1) == Complex(1.0));

  for (std::size_t db = 1; db <= 4; ++db)
    for (std::size_t da = db; da <= 5; ++da) {
      const auto u = ucnot(db, da);
      CHECK(u.adjoint() * u == ComplexMatrix::identity(db * da));
      for (std::size_t j = 0; j < db; ++j) CHECK(u(j * da + j, j * da) == Complex(1.0));
      for (std::size_t j = 0; j < db; ++j)
        for (std::size_t k = db; k < da; ++k) CHECK(u(j * da + k, j * da + k) == Complex(1.0));
    }
  CHECK_THROWS_AS(ucnot(3, 2), ValidationError);
}

TEST_CASE("CNOT embedding copies amplitudes onto the diagonal") {
  auto rng = random::make_rng(1);
  const auto psi = random::random_pure(rng, 4);
  const auto big = cnot_embedding(psi);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(big.amplitudes()[j * 4 + k] == (j == k ? psi[j] : Complex{}));
}

TEST_CASE("maximally correlated states") {
  const auto plus = DensityMatrix::from_pure(PureState::normalized({1.0, 1.0}));
  const auto bell = DensityMatrix::from_pure(PureState::normalized({1.0, 0.0, 0.0, 1.0}));
  CHECK((maximally_correlated(plus).matrix() - bell.matrix()).max_abs() < 1e-15);

  auto rng = random::make_rng(2);
  const auto rho = random::random_density(rng, 3);
  const auto mc = maximally_correlated(rho);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) {
      const bool on = r % 4 == 0 && c % 4 == 0;
      CHECK(mc(r, c) == (on ? rho(r / 4, c / 4) : Complex{}));
    }
  CHECK_NOTHROW(DensityMatrix(mc.matrix()));
}

TEST_CASE("coherence and Schmidt vectors of simple states") {
  const auto bell = BipartitePureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
  auto r = coherence_schmidt_report(bell);
  CHECK(r.mu[0] == doctest::Approx(0.5));
  CHECK(r.lambda[0] == doctest::Approx(0.5));
  CHECK(r.equivalent);
  CHECK(r.permuted_schmidt_form);

  const auto product = BipartitePureState::normalized({2, 2}, {1.0, 1.0, 0.0, 0.0});
  r = coherence_schmidt_report(product);
  CHECK(r.mu[0] == doctest::Approx(0.5));
  CHECK(r.mu[1] == doctest::Approx(0.5));
  CHECK(r.lambda[0] == doctest::Approx(1.0));
  CHECK(r.lambda[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.coherence_rank == 2);
  CHECK(r.schmidt_rank == 1);
  CHECK_FALSE(r.equivalent);
  CHECK_FALSE(r.permuted_schmidt_form);
}

TEST_CASE("coherence vector is majorized by the Schmidt vector") {
  auto rng = random::make_rng(3);
  for (BipartiteDims dims : {BipartiteDims{2, 2}, {3, 3}, {3, 4}, {4, 6}})
    for (int trial = 0; trial < 250; ++trial) {
      const auto r = coherence_schmidt_report(random::random_bipartite(rng, dims));
      CHECK(r.slack >= -1e-10);
      CHECK(r.mu_majorized_by_lambda);
      CHECK(r.coherence_rank >= r.schmidt_rank);
    }
}

TEST_CASE("permuted Schmidt form is detected and reconstructs the state") {
  auto rng = random::make_rng(4);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (BipartiteDims dims : {BipartiteDims{2, 2}, {3, 3}, {3, 4}, {4, 3}, {2, 5}})
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t r = std::min(dims.b, dims.a);
      const auto lambda = random::random_prob(rng, r);
      const auto pb = shuffled(dims.b, rng), pa = shuffled(dims.a, rng);
      ComplexVector amps(dims.total());
      const std::size_t used = 1 + trial % r;  // also covers rank-deficient forms
      double norm = 0.0;
      for (std::size_t j = 0; j < used; ++j) norm += lambda[j];
      for (std::size_t j = 0; j < used; ++j)
        amps[pb[j] * dims.a + pa[j]] = std::polar(std::sqrt(lambda[j] / norm), angle(rng));
      const BipartitePureState psi(dims, amps);
      const auto report = coherence_schmidt_report(psi);
      CHECK(report.equivalent);
      REQUIRE(report.permuted_schmidt_form);
      CHECK(report.coherence_rank == used);
      CHECK(report.schmidt_rank == used);

      const auto sorted = report.lambda.sorted_desc();
      ComplexVector rebuilt(dims.total());
      for (std::size_t j = 0; j < r; ++j)
        rebuilt[report.perm_b[j] * dims.a + report.perm_a[j]] =
            std::polar(std::sqrt(std::max(0.0, sorted[j])), report.phases[j]);
      double err = 0.0;
      for (std::size_t i = 0; i < dims.total(); ++i)
        err = std::max(err, std::abs(rebuilt[i] - amps[i]));
      CHECK(err <= 1e-10);
    }
}

TEST_CASE("entanglement never exceeds coherence of the same vector") {
  auto rng = random::make_rng(5);
  for (BipartiteDims dims : {BipartiteDims{2, 3}, {3, 3}, {4, 2}})
    for (int trial = 0; trial < 100; ++trial) {
      const auto psi = random::random_bipartite(rng, dims);
      const auto mu = coherence_vector(psi.amplitudes());
      const auto lambda = schmidt_coefficients(psi);
      for (const auto &f : catalog(dims.total()))
        CHECK(evaluate(f, lambda) <= evaluate(f, mu) + 1e-10);
    }
}

TEST_CASE("CNOT embedding turns coherence into equal entanglement") {
  auto rng = random::make_rng(6);
  for (std::size_t d : {2u, 3u, 5u})
    for (int trial = 0; trial < 50; ++trial) {
      const auto psi = random::random_pure(rng, d);
      const auto big = cnot_embedding(psi);
      for (const auto &f : catalog(d))
        CHECK(e_f_pure(f, big) == doctest::Approx(c_f_pure(f, psi)).epsilon(1e-10));
    }
}

TEST_CASE("minimal coherence over local unitaries") {
  const auto bell = BipartitePureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
  auto res = min_coherence_over_local_unitaries(Functional::shannon(), bell);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK(res.u_b == ComplexMatrix::identity(2));
  CHECK(res.u_a == ComplexMatrix::identity(2));

  const auto product = BipartitePureState::normalized({2, 3}, {1.0, 2.0, 0.5, 2.0, 4.0, 1.0});
  for (const auto &f : catalog(6))
    CHECK(min_coherence_over_local_unitaries(f, product).value ==
          doctest::Approx(0.0).epsilon(1e-9));

  auto rng = random::make_rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const auto psi = random::random_bipartite(rng, {3, 3});
    for (const auto &f : catalog(9)) {
      LocalUnitaryOptions opts;
      opts.samples = 1000;
      opts.seed = static_cast<std::uint64_t>(trial);
      res = min_coherence_over_local_unitaries(f, psi, opts);
      CHECK(res.rotated_coherence == doctest::Approx(res.value).epsilon(1e-9));
      REQUIRE(res.sampled_min.has_value());
      CHECK(*res.sampled_min >= res.value - 1e-9);
    }
  }
  CHECK_THROWS_AS(min_coherence_over_local_unitaries(Functional::gc(3), bell), ValidationError);
}

TEST_CASE("roof equality on pure and incoherent states") {
  auto rng = random::make_rng(8);
  const auto rho = DensityMatrix::from_pure(random::random_pure(rng, 3));
  for (const auto &f : {Functional::shannon(), Functional::gc(3)})
    CHECK(roof_equality_check(f, rho).gap <= 1e-10);
  const auto diag = DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.3, 0.2}));
  const auto check = roof_equality_check(Functional::shannon(), diag);
  CHECK(check.coherence.value == doctest::Approx(0.0));
  CHECK(check.entanglement.value == doctest::Approx(0.0));
}
