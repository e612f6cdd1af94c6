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
#include "doctest.h"

#include <cmath>

#include "qcoh/errors.hpp"
#include "qcoh/monotones.hpp"
#include "qcoh/random.hpp"

using namespace qcoh;

namespace {

DensityMatrix symmetric_state(std::size_t d, double p) {
  ComplexVector plus(d, 1.0 / std::sqrt(static_cast<double>(d)));
  ComplexMatrix m = ComplexMatrix::outer(plus, plus) * Complex(p) +
                    ComplexMatrix::identity(d) * Complex((1.0 - p) / static_cast<double>(d));
  return DensityMatrix(m);
}

// Σ_jk ρ_jk |jj><kk|, built here independently of the mapping module.
DensityMatrix correlated_copy(const DensityMatrix &rho) {
  const std::size_t d = rho.dim();
  ComplexMatrix m(d * d, d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m(j * d + j, k * d + k) = rho(j, k);
  return DensityMatrix(m);
}

double reconstruction_error(const RoofEstimate &est, const DensityMatrix &rho) {
  ComplexMatrix sum(rho.dim(), rho.dim());
  for (const auto &member : est.ensemble)
    sum += ComplexMatrix::outer(member.state.amplitudes(), member.state.amplitudes()) *
           Complex(member.weight);
  return (sum - rho.matrix()).max_abs();
}

double ensemble_average(const Functional &f, const RoofEstimate &est, const RoofKind &kind) {
  double total = 0.0;
  for (const auto &member : est.ensemble) {
    const double v = kind.is_entanglement()
                         ? e_f_pure(f, BipartitePureState(kind.dims(), member.state))
                         : c_f_pure(f, member.state);
    total += member.weight * v;
  }
  return total;
}

void check_estimate(const Functional &f, const RoofEstimate &est, const DensityMatrix &rho,
                    const RoofKind &kind) {
  double weight_sum = 0.0;
  for (const auto &member : est.ensemble) {
    CHECK(member.weight >= 0.0);
    weight_sum += member.weight;
  }
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(reconstruction_error(est, rho) <= 1e-8);
  CHECK(std::abs(est.value - ensemble_average(f, est, kind)) <= 1e-10);
}

}  // namespace

TEST_CASE("coherence vector keeps basis order and drops phases") {
  const auto mu = coherence_vector(
      PureState(ComplexVector{std::sqrt(0.3), std::polar(std::sqrt(0.7), 1.3)}));
  CHECK(mu[0] == doctest::Approx(0.3));
  CHECK(mu[1] == doctest::Approx(0.7));
  const auto uniform = coherence_vector(PureState::normalized({1.0, 1.0, 1.0}));
  for (double x : uniform) CHECK(x == doctest::Approx(1.0 / 3));
  CHECK(uniform.sum() == doctest::Approx(1.0));
}

TEST_CASE("pure-state coherence values") {
  CHECK(c_f_pure(Functional::shannon(), PureState::normalized({1.0, 1.0})) ==
        doctest::Approx(1.0));
  CHECK(c_f_pure(Functional::one_minus_max(), PureState({std::sqrt(0.7), std::sqrt(0.3)})) ==
        doctest::Approx(0.3));
  for (const auto &f : {Functional::shannon(), Functional::one_minus_max(), Functional::gc(4),
                        Functional::renyi(0.5), Functional::tail(2)})
    CHECK(c_f_pure(f, PureState::basis(4, 2)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(c_f_pure(Functional::gc(3), PureState::basis(4, 0)), ValidationError);
}

TEST_CASE("pure-state entanglement values") {
  const auto bell = BipartitePureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
  CHECK(e_f_pure(Functional::shannon(), bell) == doctest::Approx(1.0));
  CHECK(e_f_pure(Functional::gc(2), bell) == doctest::Approx(1.0));
  const auto product = BipartitePureState::normalized({2, 3}, {1.0, 2.0, 0.5, 2.0, 4.0, 1.0});
  CHECK(e_f_pure(Functional::shannon(), product) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(e_f_pure(Functional::gc(2), product) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(e_f_pure(Functional::gc(3), bell), ValidationError);

  // The determinant route for gc agrees with the Schmidt spectrum.
  auto rng = random::make_rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random::random_bipartite(rng, {3, 4});
    const auto lambda = schmidt_coefficients(psi);
    CHECK(e_f_pure(Functional::gc(3), psi) ==
          doctest::Approx(3.0 * std::cbrt(lambda[0] * lambda[1] * lambda[2])).epsilon(1e-9));
  }
}

TEST_CASE("rank-one roof equals the pure-state value") {
  auto rng = random::make_rng(3);
  const auto psi = random::random_pure(rng, 4);
  const auto rho = DensityMatrix::from_pure(psi);
  for (const auto &f : {Functional::shannon(), Functional::gc(4), Functional::tail(3)}) {
    const auto est = convex_roof(f, rho, RoofKind::coherence());
    CHECK(est.ensemble.size() == 1);
    CHECK(est.value == doctest::Approx(c_f_pure(f, psi)).epsilon(1e-12));
    check_estimate(f, est, rho, RoofKind::coherence());
  }
}

TEST_CASE("incoherent and separable states have zero roof") {
  const auto f = Functional::shannon();
  const auto mixed = DensityMatrix::maximally_mixed(2);
  CHECK(convex_roof(f, mixed, RoofKind::coherence()).value == doctest::Approx(0.0));
  const auto diag = DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.4, 0.1, 0.2, 0.3}));
  const auto est = convex_roof(f, diag, RoofKind::entanglement({2, 2}));
  CHECK(est.value == doctest::Approx(0.0));
  check_estimate(f, est, diag, RoofKind::entanglement({2, 2}));
}

TEST_CASE("gc roof on the symmetric qutrit state") {
  const auto rho = symmetric_state(3, 0.75);
  const auto f = Functional::gc(3);
  const auto est = convex_roof(f, rho, RoofKind::coherence());
  CHECK(std::abs(est.value - 0.5) <= 1e-2);
  check_estimate(f, est, rho, RoofKind::coherence());
}

TEST_CASE("roof estimates on random states") {
  auto rng = random::make_rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const auto rho = random::random_density(rng, 3);
    double l1 = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (j != k) l1 += std::abs(rho(j, k));
    const auto gc = Functional::gc(3);
    RoofOptions opts;
    opts.restarts = 8;
    opts.seed = static_cast<std::uint64_t>(trial);
    const auto est = convex_roof(gc, rho, RoofKind::coherence(), opts);
    check_estimate(gc, est, rho, RoofKind::coherence());
    CHECK(est.value + 1.0 >= l1 - 1e-8);

    const auto sh = Functional::shannon();
    const auto coh = convex_roof(sh, rho, RoofKind::coherence(), opts);
    const auto rho_mc = correlated_copy(rho);
    const auto ent = convex_roof(sh, rho_mc, RoofKind::entanglement({3, 3}), opts);
    check_estimate(sh, coh, rho, RoofKind::coherence());
    check_estimate(sh, ent, rho_mc, RoofKind::entanglement({3, 3}));
    CHECK(std::abs(coh.value - ent.value) <= 5e-3);
  }
}

TEST_CASE("more restarts never raise the estimate") {
  auto rng = random::make_rng(8);
  const auto rho = random::random_density(rng, 3);
  const auto f = Functional::renyi(0.5);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t restarts : {1u, 2u, 4u, 8u}) {
    RoofOptions opts;
    opts.restarts = restarts;
    const double v = convex_roof(f, rho, RoofKind::coherence(), opts).value;
    CHECK(v <= previous);
    previous = v;
  }
}

TEST_CASE("roof is deterministic across thread counts") {
  auto rng = random::make_rng(9);
  const auto rho = random::random_density(rng, 3);
  RoofOptions one, many;
  one.restarts = many.restarts = 6;
  one.seed = many.seed = 42;
  many.threads = 3;
  const auto a = convex_roof(Functional::shannon(), rho, RoofKind::coherence(), one);
  const auto b = convex_roof(Functional::shannon(), rho, RoofKind::coherence(), many);
  CHECK(a.value == b.value);
  CHECK(a.best_restart == b.best_restart);
}

TEST_CASE("roof argument validation") {
  const auto rho = DensityMatrix::maximally_mixed(4);
  RoofOptions small;
  small.ensemble_size = 3;
  CHECK_THROWS_AS(convex_roof(Functional::shannon(), rho, RoofKind::coherence(), small),
                  ValidationError);
  CHECK_THROWS_AS(convex_roof(Functional::shannon(), rho, RoofKind::entanglement({3, 2})),
                  ValidationError);
  CHECK_THROWS_AS(convex_roof(Functional::gc(2), rho, RoofKind::coherence()), ValidationError);
}

TEST_CASE("roof of an incoherent state vanishes for piecewise-constant functionals") {
  const auto rho = DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{1 / 6.0, 2 / 6.0, 0.5}));
  for (const auto &f : {Functional::renyi(0.0), Functional::tail(2), Functional::shannon()}) {
    RoofOptions opts;
    opts.restarts = 4;
    CHECK(convex_roof(f, rho, RoofKind::coherence(), opts).value <= 1e-12);
  }
}
