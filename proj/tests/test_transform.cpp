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
#include "qcoh/monotones.hpp"
#include "qcoh/transform.hpp"

using namespace qcoh;

namespace {

double fidelity(const PureState &a, const PureState &b) {
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}
}  // namespace

TEST_CASE("Kraus operator classes") {
  CHECK(classify_kraus(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.5, 0.0})) ==
        KrausClass::StrictlyIncoherent);
  CHECK(classify_kraus(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}) == KrausClass::StrictlyIncoherent);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(classify_kraus(ComplexMatrix{{h, h}, {h, -h}}) == KrausClass::Neither);
  CHECK(classify_kraus(ComplexMatrix{{1.0, 1.0}, {0.0, 0.0}}) == KrausClass::Incoherent);
  // Entries far below the largest one are treated as zero.
  CHECK(classify_kraus(ComplexMatrix{{1.0, 1e-14}, {0.0, 1.0}}) ==
        KrausClass::StrictlyIncoherent);
  CHECK(std::string(to_string(KrausClass::Incoherent)) == "IO");
}

TEST_CASE("selective application") {
  const KrausSet identity({ComplexMatrix::identity(2)});
  const auto plus = PureState::normalized({1.0, 1.0});
  auto outcomes = apply_selective(plus, identity);
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].probability == doctest::Approx(1.0));
  CHECK(fidelity(outcomes[0].state, plus) == doctest::Approx(1.0));

  const KrausSet dephase({ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0}),
                          ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0})});
  const auto mixed = apply_selective(DensityMatrix::from_pure(plus), dephase);
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].probability == doctest::Approx(0.5));
  CHECK(mixed[1].probability == doctest::Approx(0.5));
  CHECK(mixed[1].state(1, 1).real() == doctest::Approx(1.0));

  // A zero-probability branch is dropped.
  outcomes = apply_selective(PureState::basis(2, 0), dephase);
  CHECK(outcomes.size() == 1);

  const KrausSet partial({ComplexMatrix::diagonal(std::vector<double>{1.0, 0.5})});
  CHECK_THROWS_AS(apply_selective(plus, partial), ValidationError);
  CHECK_THROWS_AS(apply_selective(PureState::basis(3, 0), identity), ValidationError);
}

TEST_CASE("transformability by majorization") {
  const auto plus = PureState::normalized({1.0, 1.0});
  auto rng = random::make_rng(1);
  for (int i = 0; i < 20; ++i) CHECK(can_transform(plus, random::random_pure(rng, 2)));
  CHECK_FALSE(can_transform(PureState::basis(2, 0), plus));
  CHECK(can_transform(PureState({std::sqrt(0.6), std::sqrt(0.4)}),
                      PureState({std::sqrt(0.7), std::sqrt(0.3)})));
}

TEST_CASE("synthesized protocols") {
  SUBCASE("identity") {
    auto rng = random::make_rng(2);
    const auto psi = random::random_pure(rng, 4);
    const auto k = synthesize_io(psi, psi);
    REQUIRE(k.size() == 1);
    CHECK((k.operators()[0] - ComplexMatrix::identity(4)).max_abs() < 1e-12);
  }
  SUBCASE("plus to a biased qubit") {
    const auto psi = PureState::normalized({1.0, 1.0});
    const auto phi = PureState({std::sqrt(0.8), std::sqrt(0.2)});
    const auto k = synthesize_io(psi, phi);
    CHECK(k.size() == 2);
    CHECK(k.kraus_class() == KrausClass::StrictlyIncoherent);
    CHECK(k.completeness_residual() <= 1e-12);
    for (const auto &o : apply_selective(psi, k)) CHECK(fidelity(o.state, phi) >= 1 - 1e-12);
  }
  SUBCASE("impossible target") {
    CHECK_THROWS_AS(synthesize_io(PureState::basis(2, 0), PureState::normalized({1.0, 1.0})),
                    NotMajorizedError);
  }
  SUBCASE("random majorized pairs, including different dimensions") {
    auto rng = random::make_rng(3);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
      const auto psi = random::random_pure(rng, dim(rng));
      const auto phi = random::random_majorizing(rng, psi, trial % 3 == 0 ? dim(rng) : psi.dim());
      REQUIRE(can_transform(psi, phi));
      const auto k = synthesize_io(psi, phi);
      CHECK(k.completeness_residual() <= 1e-10);
      CHECK(k.kraus_class() == KrausClass::StrictlyIncoherent);
      for (const auto &op : k.operators()) CHECK(classify_kraus(op) == KrausClass::StrictlyIncoherent);
      double total = 0.0;
      for (const auto &o : apply_selective(psi, k)) {
        CHECK(fidelity(o.state, phi) >= 1 - 1e-10);
        total += o.probability;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("targets with vanishing amplitudes") {
    const auto psi = PureState::normalized({1.0, 1.0, 0.0});
    const auto phi = PureState::normalized({0.0, 1.0, 0.0});
    const auto k = synthesize_io(psi, phi);
    CHECK(k.completeness_residual() <= 1e-12);
    for (const auto &o : apply_selective(psi, k)) CHECK(fidelity(o.state, phi) >= 1 - 1e-12);
  }
}

TEST_CASE("maximal conversion probability") {
  const auto psi = PureState({std::sqrt(0.7), std::sqrt(0.3)});
  const auto phi = PureState::normalized({1.0, 1.0});
  CHECK(max_prob_coherent(psi, phi) == doctest::Approx(0.6));
  CHECK(max_prob_coherent(phi, psi) == 1.0);
  CHECK(max_prob_coherent(PureState::basis(3, 1), PureState::normalized({1.0, 1.0, 0.0})) == 0.0);

  auto rng = random::make_rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random::random_pure(rng, 3), b = random::random_pure(rng, 3);
    const double p = max_prob_coherent(a, b);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK((p == 1.0) == can_transform(a, b));
  }
}

TEST_CASE("entangled-target probability") {
  auto rng = random::make_rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto psi = random::random_pure(rng, 4), phi = random::random_pure(rng, 4);
    const auto target = cnot_embedding(phi);
    const auto res = max_prob_entangled(psi, target);
    CHECK(res.exact);
    CHECK(std::abs(res.upper_bound - max_prob_coherent(psi, phi)) <= 1e-12);

    // Never above the ratio of any tail monotone.
    const auto general = random::random_bipartite(rng, {2, 3});
    const auto psi2 = random::random_pure(rng, 3);
    const auto bound = max_prob_entangled(psi2, general);
    CHECK_FALSE(bound.exact);
    const auto lambda = schmidt_coefficients(general);
    for (std::size_t m = 1; m <= 3; ++m) {
      const double den = evaluate(Functional::tail(m), lambda);
      if (den > 0.0)
        CHECK(bound.upper_bound <=
              evaluate(Functional::tail(m), coherence_vector(psi2)) / den + 1e-12);
    }
  }
  const auto bell = BipartitePureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
  CHECK(max_prob_entangled(PureState::normalized({1.0, 1.0}), bell).upper_bound == 1.0);
  const auto ghz3 = BipartitePureState::normalized({3, 3}, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(max_prob_entangled(PureState::normalized({1.0, 1.0, 0.0}), ghz3).upper_bound == 0.0);
}

TEST_CASE("conversion criterion") {
  const auto bell = BipartitePureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
  auto res = conversion_criterion_check(PureState::normalized({1.0, 1.0}), bell);
  CHECK(res.necessary_holds);
  CHECK(res.schmidt_form_target);
  CHECK(res.iff_verdict == std::optional<bool>(true));
  res = conversion_criterion_check(PureState::basis(2, 0), bell);
  CHECK(res.iff_verdict == std::optional<bool>(false));

  auto rng = random::make_rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = random::random_pure(rng, 3);
    const auto phi = random::random_majorizing(rng, psi, 3);
    res = conversion_criterion_check(psi, cnot_embedding(phi));
    CHECK(res.iff_verdict == std::optional<bool>(can_transform(psi, phi)));
    CHECK(*res.iff_verdict);
  }
  res = conversion_criterion_check(PureState::normalized({1.0, 1.0}),
                                   random::random_bipartite(rng, {2, 2}));
  CHECK_FALSE(res.schmidt_form_target);
  CHECK_FALSE(res.iff_verdict.has_value());
}

TEST_CASE("random incoherent channels") {
  auto rng = random::make_rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial) % 5;
    const auto sio = random_sio_channel(rng, d, 1 + trial % 4);
    CHECK(sio.kraus_class() == KrausClass::StrictlyIncoherent);
    CHECK(sio.completeness_residual() <= 1e-10);
    const auto io = random_io_channel(rng, d, 1 + trial % 4);
    CHECK(io.kraus_class() != KrausClass::Neither);
    CHECK(io.completeness_residual() <= 1e-10);
  }
}

TEST_CASE("incoherent channels respect majorization on average") {
  auto rng = random::make_rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial) % 5;
    const auto psi = random::random_pure(rng, d);
    const auto k = trial % 2 ? random_io_channel(rng, d, 1 + trial % 4)
                             : random_sio_channel(rng, d, 1 + trial % 4);
    const auto res = incoherent_majorization_check(psi, k);
    CHECK(res.slack >= -1e-9);
    CHECK(res.holds);
  }
  const auto psi = PureState::normalized({1.0, 2.0, 3.0});
  auto res = incoherent_majorization_check(psi, KrausSet({ComplexMatrix::identity(3)}));
  CHECK(equiv(res.lhs, res.rhs));
  const auto phi = PureState::normalized({3.0, 1.0, 0.5});
  REQUIRE(can_transform(psi, phi));
  res = incoherent_majorization_check(psi, synthesize_io(psi, phi));
  CHECK(res.holds);
  CHECK(equiv(res.rhs, coherence_vector(phi)));

  const double h = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(incoherent_majorization_check(PureState::basis(2, 0),
                                                KrausSet({ComplexMatrix{{h, h}, {h, -h}}})),
                  ValidationError);
}
