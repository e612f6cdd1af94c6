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
#include "qcoh/bounds.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/mapping.hpp"
#include "qcoh/random.hpp"

using namespace qcoh;

namespace {

double witness(const BoundCertificate &cert, const std::string &name) {
  for (const auto &[n, v] : cert.witnesses)
    if (n == name) return v;
  FAIL("missing witness " << name);
  return 0.0;
}

DensityMatrix permuted(const DensityMatrix &rho, std::span<const std::size_t> perm) {
  ComplexMatrix m(rho.dim(), rho.dim());
  for (std::size_t j = 0; j < rho.dim(); ++j)
    for (std::size_t k = 0; k < rho.dim(); ++k) m(perm[j], perm[k]) = rho(j, k);
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("l1 coherence") {
  CHECK(c_l1(DensityMatrix::maximally_mixed(4)) == 0.0);
  for (std::size_t d = 2; d <= 6; ++d) {
    const ComplexVector amps(d, 1.0);
    CHECK(c_l1(DensityMatrix::from_pure(PureState::normalized(amps))) ==
          doctest::Approx(static_cast<double>(d) - 1.0));
  }
  CHECK(c_l1(symmetric_family(3, 0.75).state) == doctest::Approx(1.5));
}

TEST_CASE("negativity") {
  const auto diag = DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  CHECK(negativity(diag, {2, 2}) == doctest::Approx(0.0).epsilon(1e-12));
  const auto bell = DensityMatrix::from_pure(PureState::normalized({1.0, 0.0, 0.0, 1.0}));
  CHECK(negativity(bell, {2, 2}) == doctest::Approx(1.0));
  CHECK(negativity(isotropic_family(3, 0.9).state, {3, 3}) == doctest::Approx(1.7));
  CHECK_THROWS_AS(negativity(bell, {3, 2}), ValidationError);

  auto rng = random::make_rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random::random_density(rng, 2 + trial % 5);
    CHECK(std::abs(negativity(maximally_correlated(rho), {rho.dim(), rho.dim()}) - c_l1(rho)) <=
          1e-9);
  }
}

TEST_CASE("robustness of coherence") {
  SUBCASE("incoherent states need no envelope") {
    const auto rho = DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.3, 0.2}));
    const auto sol = robustness_coherence(rho);
    CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("pure states equal their l1 coherence") {
    auto rng = random::make_rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const auto rho = DensityMatrix::from_pure(random::random_pure(rng, 2 + trial % 7));
      CHECK(std::abs(robustness_coherence(rho).value - c_l1(rho)) <= 1e-5);
    }
  }
  SUBCASE("symmetric state") {
    CHECK(std::abs(robustness_coherence(symmetric_family(3, 0.75).state).value - 1.5) <= 1e-5);
  }
  SUBCASE("certificate invariants on random mixed states") {
    auto rng = random::make_rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const auto rho = random::random_density(rng, 2 + trial % 6, 1 + trial % 3);
      const auto sol = robustness_coherence(rho);
      CHECK(sol.residual_min_eig >= -1e-7);
      const double total = std::accumulate(sol.certificate.begin(), sol.certificate.end(), 0.0);
      CHECK(std::abs(total - 1.0 - sol.value) <= 1e-7);
      CHECK(sol.lower_bound <= sol.value + 1e-12);
      CHECK(sol.value - sol.lower_bound <= 1e-6);
      CHECK(sol.value <= c_l1(rho) + 1e-6);
      for (std::size_t i = 0; i < rho.dim(); ++i)
        CHECK(sol.certificate[i] >= rho(i, i).real() - 1e-9);
    }
  }
  SUBCASE("running out of cuts reports the bounds reached") {
    RobustnessOptions opts;
    opts.max_cuts = 4;
    try {
      robustness_coherence(DensityMatrix::from_pure(PureState::normalized({1.0, 2.0, 3.0, 4.0})),
                           opts);
      FAIL("expected a convergence error");
    } catch (const ConvergenceError &e) {
      CHECK(e.lower() <= e.upper());
    }
  }
}

TEST_CASE("product bound") {
  auto res = product_bound_check(std::vector<Complex>{1.0, 1.0, 1.0});
  CHECK(res.lhs == doctest::Approx(3.0));
  CHECK(res.rhs == doctest::Approx(3.0));
  CHECK(res.saturated);
  res = product_bound_check(std::vector<Complex>{1.0, 1.0, 0.0});
  CHECK(res.lhs == 0.0);
  CHECK(res.rhs == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(res.saturated);
  res = product_bound_check(std::vector<Complex>{1.0, 0.5, 0.2});
  CHECK(res.holds);
  CHECK_FALSE(res.saturated);
  CHECK(product_bound_check(std::vector<Complex>{0.3, Complex(0, 2.0)}).saturated);

  auto rng = random::make_rng(4);
  std::uniform_real_distribution<double> angle(-3.0, 3.0), radius(0.1, 2.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(trial) % 6;
    const auto c = random::gaussian_vector(rng, d);
    res = product_bound_check(c);
    CHECK(res.lhs >= res.rhs - 1e-12);
    // Saturating families: equal moduli, and equal moduli but one zero.
    const double r = radius(rng);
    std::vector<Complex> equal(d), one_zero(d);
    for (std::size_t j = 0; j < d; ++j) {
      equal[j] = std::polar(r, angle(rng));
      one_zero[j] = j == d / 2 ? Complex{} : std::polar(r, angle(rng));
    }
    for (const auto &v : {equal, one_zero}) {
      res = product_bound_check(v);
      CHECK(res.saturated);
      CHECK(std::abs(res.lhs - res.rhs) <= 1e-12 * r * r * static_cast<double>(d * d));
    }
  }
}

TEST_CASE("symmetric family") {
  auto fam = symmetric_family(3, 0.0);
  CHECK(fam.c_l1 == 0.0);
  CHECK(fam.c_gc == 0.0);
  fam = symmetric_family(3, 0.75);
  CHECK(fam.fidelity == doctest::Approx(5.0 / 6.0));
  CHECK(fam.c_l1 == doctest::Approx(1.5));
  CHECK(fam.c_r == doctest::Approx(1.5));
  CHECK(fam.c_gc == doctest::Approx(0.5));
  CHECK(symmetric_family(4, 2.0 / 3.0).c_gc == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(symmetric_family(3, 1.2), ValidationError);
  CHECK_THROWS_AS(symmetric_family(1, 0.5), ValidationError);

  // Bounds collapse onto the closed form once F >= (d−1)/d.
  for (std::size_t d = 2; d <= 5; ++d)
    for (int i = 0; i <= 10; ++i) {
      const double dd = static_cast<double>(d);
      const double f = (dd - 1.0) / dd + (1.0 / dd) * i / 10.0;
      const double p = (f - 1.0 / dd) / (1.0 - 1.0 / dd);
      fam = symmetric_family(d, p);
      const double l1 = c_l1(fam.state);
      const double r = robustness_coherence(fam.state).value;
      CHECK(std::abs(fam.c_gc + (dd - 2.0) - l1) <= 1e-5);
      CHECK(std::abs(l1 - r) <= 1e-5);
    }

  const auto state = symmetric_family(5, 0.8).state;
  std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  const auto copy = permuted(state, perm);
  CHECK(std::abs(c_l1(copy) - c_l1(state)) <= 1e-12);
  CHECK(std::abs(certify_cgc_lower(copy).lower_bound - certify_cgc_lower(state).lower_bound) <=
        1e-12);
}

TEST_CASE("isotropic family") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const double dd = static_cast<double>(d);
    auto fam = isotropic_family(d, 1.0 / dd);
    CHECK(fam.negativity == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(negativity(fam.state, {d, d}) == doctest::Approx(0.0).epsilon(1e-9));
    fam = isotropic_family(d, (dd - 1.0) / dd);
    CHECK(fam.e_gc == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fam.negativity == doctest::Approx(dd - 2.0));
    for (int i = 0; i <= 10; ++i) {
      const double f = (dd - 1.0) / dd + (1.0 / dd) * i / 10.0;
      fam = isotropic_family(d, f);
      const double n = negativity(fam.state, {d, d});
      CHECK(std::abs(fam.e_gc + (dd - 2.0) - n) <= 1e-9);
      CHECK(std::abs(fam.e_r - n) <= 1e-9);
    }
  }
  const auto fam = isotropic_family(2, 0.9);
  CHECK(fam.negativity == doctest::Approx(0.8));
  CHECK(fam.e_gc == doctest::Approx(0.8));
  CHECK_THROWS_AS(isotropic_family(3, 0.05), ValidationError);
}

TEST_CASE("coherence concurrence certificates") {
  auto cert = certify_cgc_lower(DensityMatrix::maximally_mixed(3));
  CHECK(cert.lower_bound == 0.0);

  cert = certify_cgc_lower(symmetric_family(3, 1.0).state);
  CHECK(witness(cert, "c_l1") == doctest::Approx(2.0));
  CHECK(cert.lower_bound == doctest::Approx(1.0));
  CHECK(cert.tight);

  cert = certify_cgc_lower(symmetric_family(3, 0.75).state);
  CHECK(cert.lower_bound == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(cert.closed_form.has_value());
  CHECK(*cert.closed_form == doctest::Approx(0.5));
  CHECK(cert.tight);
  CHECK(cert.family == std::optional<std::string>("symmetric"));

  auto rng = random::make_rng(5);
  CertifyOptions opts;
  opts.with_roof = true;
  opts.roof.restarts = 4;
  for (int trial = 0; trial < 6; ++trial) {
    const auto rho = random::random_density(rng, 3);
    cert = certify_cgc_lower(rho, opts);
    REQUIRE(cert.upper_estimate.has_value());
    CHECK(cert.lower_bound <= *cert.upper_estimate + 1e-6);
    for (const auto &[name, value] : cert.witnesses) CHECK(value >= 0.0);
  }
}

TEST_CASE("entanglement concurrence certificates") {
  const auto diag = DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  CHECK(certify_egc_lower(diag, {2, 2}).lower_bound == doctest::Approx(0.0).epsilon(1e-12));

  auto cert = certify_egc_lower(isotropic_family(3, 0.9).state, {3, 3});
  CHECK(witness(cert, "negativity") == doctest::Approx(1.7));
  CHECK(cert.lower_bound == doctest::Approx(0.7));
  CHECK(cert.tight);
  CHECK(cert.family == std::optional<std::string>("isotropic"));

  auto rng = random::make_rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random::random_density(rng, 3);
    cert = certify_egc_lower(maximally_correlated(rho), {3, 3});
    CHECK(cert.family == std::optional<std::string>("maximally_correlated"));
    CHECK(std::abs(cert.lower_bound - std::max(0.0, c_l1(rho) - 1.0)) <= 1e-9);
    CHECK(witness(cert, "e_R") <= witness(cert, "negativity") + 1e-6);
  }
  CHECK_THROWS_AS(certify_egc_lower(DensityMatrix::maximally_mixed(6), {2, 3}), ValidationError);
}
