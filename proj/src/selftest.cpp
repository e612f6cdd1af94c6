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
#include "qcoh/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qcoh/bounds.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/majorize.hpp"
#include "qcoh/mapping.hpp"
#include "qcoh/monotones.hpp"
#include "qcoh/random.hpp"
#include "qcoh/transform.hpp"

namespace qcoh {

bool SelftestReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult &s) { return s.passed(); });
}

std::size_t SelftestReport::total_trials() const noexcept {
  std::size_t n = 0;
  for (const auto &s : suites) n += s.trials;
  return n;
}

std::size_t SelftestReport::total_failures() const noexcept {
  std::size_t n = 0;
  for (const auto &s : suites) n += s.failures;
  return n;
}

namespace {

using random::Rng;

// One trial: margin = tolerance − error, and the input that produced it.
struct Trial {
  double margin = 0.0;
  Counterexample input;
};

Counterexample as_input(const PureState &psi, std::string note = {}) {
  return {"pure", {psi.dim()}, ComplexVector(psi.amplitudes().begin(), psi.amplitudes().end()),
          std::move(note)};
}

Counterexample as_input(const BipartitePureState &psi, std::string note = {}) {
  return {"pure",
          {psi.dims().b, psi.dims().a},
          ComplexVector(psi.amplitudes().begin(), psi.amplitudes().end()),
          std::move(note)};
}

Counterexample as_input(const DensityMatrix &rho, std::string note = {}) {
  const auto data = rho.matrix().data();
  return {"density", {rho.dim()}, ComplexVector(data.begin(), data.end()), std::move(note)};
}

SuiteResult run_suite(std::string name, std::size_t trials, Rng rng,
                      const std::function<Trial(Rng &, std::size_t)> &body) {
  SuiteResult out;
  out.name = std::move(name);
  out.trials = trials;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    Trial r;
    try {
      r = body(rng, t);
    } catch (const std::exception &e) {
      r.margin = -std::numeric_limits<double>::infinity();
      r.input.note = std::string("exception: ") + e.what();
    }
    // NaN margins count as failures.
    if (!(r.margin >= 0.0)) {
      ++out.failures;
      if (!out.counterexample) out.counterexample = std::move(r.input);
    }
    out.worst_margin = std::min(out.worst_margin, std::isnan(r.margin) ? -HUGE_VAL : r.margin);
  }
  if (trials == 0) out.worst_margin = 0.0;
  return out;
}

std::size_t pick(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double fidelity(const PureState &a, const PureState &b) {
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

std::vector<Functional> catalog(std::size_t gc_dim) {
  return {Functional::shannon(), Functional::one_minus_max(), Functional::gc(gc_dim),
          Functional::renyi(0.5), Functional::renyi(0.0), Functional::tail(2)};
}

// Eigen-decomposition reconstructs a random Hermitian matrix; Schmidt
// coefficients match the reduced spectrum.
Trial qstate_trial(Rng &rng, std::size_t max_dim) {
  const BipartiteDims dims{pick(rng, 1, max_dim), pick(rng, 1, max_dim)};
  const auto psi = random::random_bipartite(rng, dims);
  const auto rho = DensityMatrix::from_pure(psi.as_pure());
  const auto reduced = partial_trace(rho, dims, Subsystem::A);
  auto spectrum = hermitian_eigenvalues(reduced.matrix());
  const auto lambda = schmidt_coefficients(psi).sorted_desc(std::max(dims.b, dims.a));
  spectrum.resize(lambda.size(), 0.0);
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  double err = std::abs(reduced.matrix().trace() - 1.0);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    err = std::max(err, std::abs(std::max(0.0, spectrum[i]) - lambda[i]));

  const auto sigma = random::random_density(rng, dims.total());
  const auto eig = hermitian_eig(sigma.matrix());
  ComplexMatrix back(sigma.dim(), sigma.dim());
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const auto v = eig.vectors.column(k);
    back += ComplexMatrix::outer(v, v) * Complex(eig.values[k]);
  }
  err = std::max(err, (back - sigma.matrix()).max_abs());
  return {1e-10 - err, as_input(psi)};
}

// T-transform chains reproduce the majorized vector, and every catalogue
// functional is Schur concave along them.
Trial majorize_trial(Rng &rng, std::size_t max_dim) {
  const std::size_t n = pick(rng, 2, max_dim);
  const auto x = random::random_prob(rng, n);
  std::vector<double> y(x.begin(), x.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 1);
    if (i != j) apply_t_transform({i, j, unit(rng)}, y);
  }
  const ProbVector target(y);
  const auto chain = t_transform_chain(target, x);
  auto reached = apply_chain(chain, std::vector<double>(x.begin(), x.end()));
  std::sort(reached.begin(), reached.end(), std::greater<>());
  const auto want = target.sorted_desc(n);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(reached[i] - want[i]));
  double margin = 1e-12 - err;
  for (const auto &f : catalog(n)) {
    const double gain = evaluate(f, target) - evaluate(f, x);
    margin = std::min(margin, gain + 1e-12);
  }
  ComplexVector amps(n);
  for (std::size_t i = 0; i < n; ++i) amps[i] = std::sqrt(x[i]);
  return {margin, as_input(PureState::normalized(std::move(amps)), "coherence vector is the source")};
}

Trial coherence_schmidt_trial(Rng &rng, std::size_t max_dim) {
  const BipartiteDims dims{pick(rng, 2, max_dim), pick(rng, 2, max_dim)};
  auto amps = random::random_bipartite(rng, dims).amplitudes();
  ComplexVector v(amps.begin(), amps.end());
  // Sparse inputs reach lower ranks.
  if (pick(rng, 0, 2) == 0)
    for (auto &z : v)
      if (pick(rng, 0, 2) == 0) z = 0.0;
  if (norm2(v) == 0.0) v[0] = 1.0;
  const auto psi = BipartitePureState::normalized(dims, std::move(v));
  const auto rep = coherence_schmidt_report(psi);
  double margin = rep.slack + 1e-10;
  if (rep.coherence_rank < rep.schmidt_rank) margin = -1.0;
  return {margin, as_input(psi)};
}

// E_f of the generalized-CNOT image equals C_f of the source.
Trial cnot_trial(Rng &rng, std::size_t max_dim) {
  const auto psi = random::random_pure(rng, pick(rng, 2, max_dim));
  const auto image = cnot_embedding(psi);
  double err = 0.0;
  for (const auto &f : catalog(psi.dim()))
    err = std::max(err, std::abs(e_f_pure(f, image) - c_f_pure(f, psi)));
  return {1e-10 - err, as_input(psi)};
}

// The local-unitary minimum of C_f is f(λ), attained by the returned rotations.
Trial local_unitary_trial(Rng &rng, std::size_t max_dim) {
  const BipartiteDims dims{pick(rng, 2, max_dim), pick(rng, 2, max_dim)};
  const auto psi = random::random_bipartite(rng, dims);
  const auto f = Functional::shannon();
  const auto res = min_coherence_over_local_unitaries(f, psi);
  const double want = evaluate(f, schmidt_coefficients(psi));
  const double err =
      std::max(std::abs(res.value - want), std::abs(res.rotated_coherence - res.value));
  double margin = 1e-9 - err;
  // The minimum lower-bounds the product-basis coherence itself.
  margin = std::min(margin, c_f_pure(f, psi.as_pure()) - res.value + 1e-10);
  return {margin, as_input(psi)};
}

Trial synthesis_trial(Rng &rng, std::size_t max_dim) {
  const auto psi = random::random_pure(rng, pick(rng, 1, max_dim));
  const auto phi = random::random_majorizing(rng, psi, pick(rng, 1, max_dim));
  const auto k = synthesize_io(psi, phi);
  double err = k.completeness_residual() / 1e-10;
  if (k.kraus_class() != KrausClass::StrictlyIncoherent) err = 2.0;
  double total = 0.0;
  for (const auto &o : apply_selective(psi, k)) {
    err = std::max(err, (1.0 - fidelity(o.state, phi)) / 1e-10);
    total += o.probability;
  }
  err = std::max(err, std::abs(total - 1.0) / 1e-9);
  return {1.0 - err, as_input(psi, "source state; target drawn from the same stream")};
}

Trial incoherent_channel_trial(Rng &rng, std::size_t max_dim) {
  const std::size_t d = pick(rng, 2, max_dim);
  const auto k = pick(rng, 0, 1) == 0 ? random_io_channel(rng, d, pick(rng, 1, 4))
                                      : random_sio_channel(rng, d, pick(rng, 1, 4));
  const auto psi = random::random_pure(rng, d);
  const auto check = incoherent_majorization_check(psi, k);
  return {check.slack + 1e-9, as_input(psi, "channel drawn from the same stream")};
}

// P = 1 exactly when the transformation is deterministic; the CNOT image of
// the target saturates the entangled upper bound.
Trial probability_trial(Rng &rng, std::size_t max_dim) {
  const std::size_t d = pick(rng, 2, max_dim);
  const auto psi = random::random_pure(rng, d);
  const auto phi = pick(rng, 0, 1) == 0 ? random::random_majorizing(rng, psi, d)
                                        : random::random_pure(rng, d);
  const double p = max_prob_coherent(psi, phi);
  double margin = 1.0;
  if ((p == 1.0) != can_transform(psi, phi)) margin = -1.0;
  if (!(p >= 0.0 && p <= 1.0)) margin = -1.0;
  const auto ent = max_prob_entangled(psi, cnot_embedding(phi));
  margin = std::min(margin, 1e-12 - std::abs(ent.upper_bound - p));
  if (!ent.exact) margin = -1.0;
  return {margin, as_input(psi, "target drawn from the same stream")};
}

Trial product_bound_trial(Rng &rng, std::size_t max_dim) {
  const std::size_t d = pick(rng, 3, std::max<std::size_t>(3, max_dim));
  const auto psi = random::random_pure(rng, d);
  const auto res = product_bound_check(psi.amplitudes());
  double margin = res.lhs - res.rhs + 1e-12;
  if (!res.holds) margin = std::min(margin, -1e-300);
  return {margin, as_input(psi)};
}

Trial robustness_trial(Rng &rng, std::size_t max_dim) {
  const std::size_t d = pick(rng, 2, max_dim);
  if (pick(rng, 0, 1) == 0) {
    const auto psi = random::random_pure(rng, d);
    const auto rho = DensityMatrix::from_pure(psi);
    const auto sol = robustness_coherence(rho);
    return {1e-5 - std::abs(sol.value - c_l1(rho)), as_input(psi)};
  }
  const auto rho = random::random_density(rng, d);
  const auto sol = robustness_coherence(rho);
  // c_R never exceeds c_l1, the certificate dominates ρ, and the bracket holds.
  double margin = c_l1(rho) - sol.lower_bound + 1e-9;
  margin = std::min(margin, sol.residual_min_eig + 1e-9);
  margin = std::min(margin, 1e-6 + 1e-12 - (sol.value - sol.lower_bound));
  return {margin, as_input(rho)};
}

Trial negativity_trial(Rng &rng, std::size_t max_dim) {
  const std::size_t d = pick(rng, 2, max_dim);
  const auto rho = random::random_density(rng, d, pick(rng, 1, d));
  const auto mc = maximally_correlated(rho);
  return {1e-9 - std::abs(negativity(mc, {d, d}) - c_l1(rho)), as_input(rho)};
}

// Shannon roof of ρ against the entanglement roof of ρ_MC; the returned
// ensemble averages back to ρ.
Trial roof_trial(Rng &rng, std::size_t restarts) {
  const auto rho = random::random_density(rng, 3, pick(rng, 2, 3));
  RoofOptions opts;
  opts.restarts = restarts;
  opts.seed = rng();
  const auto check = roof_equality_check(Functional::shannon(), rho, opts);
  ComplexMatrix back(3, 3);
  for (const auto &m : check.coherence.ensemble)
    back += DensityMatrix::from_pure(m.state).matrix() * Complex(m.weight);
  double margin = 5e-3 - check.gap;
  margin = std::min(margin, 1e-9 - (back - rho.matrix()).max_abs());
  return {margin, as_input(rho)};
}

struct Fixture {
  const char *name;
  const char *invariant;
  std::function<void()> build;
};

std::vector<Fixture> corrupted_fixtures() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {
      {"non_hermitian", "hermitian",
       [] { DensityMatrix(ComplexMatrix{{0.5, 0.3}, {0.1, 0.5}}); }},
      {"trace_two", "trace", [] { DensityMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}); }},
      {"negative_eigenvalue", "psd",
       [] { DensityMatrix(ComplexMatrix{{0.5, 0.8}, {0.8, 0.5}}); }},
      {"nan_entry", "finite", [nan] { DensityMatrix(ComplexMatrix{{nan, 0.0}, {0.0, 1.0}}); }},
      {"infinite_amplitude", "finite",
       [] { PureState(ComplexVector{std::numeric_limits<double>::infinity(), 0.0}); }},
      {"unnormalized_pure", "norm", [] { PureState(ComplexVector{1.0, 1.0}); }},
      {"bipartite_dims", "dims",
       [] { BipartitePureState({2, 3}, ComplexVector{1.0, 0.0, 0.0, 0.0}); }},
      {"negative_probability", "probability", [] { ProbVector(std::vector<double>{1.2, -0.2}); }},
  };
}

SuiteResult validation_suite() {
  SuiteResult out;
  out.name = "validation";
  out.worst_margin = 1.0;
  for (const auto &fx : corrupted_fixtures()) {
    ++out.trials;
    std::string raised = "none";
    try {
      fx.build();
    } catch (const ValidationError &e) {
      raised = e.invariant();
    } catch (const std::exception &) {
      raised = "other";
    }
    out.raised.emplace_back(fx.name, raised);
    if (raised != fx.invariant) {
      ++out.failures;
      out.worst_margin = -1.0;
      if (!out.counterexample)
        out.counterexample = Counterexample{"fixture", {}, {},
                                            std::string(fx.name) + " raised " + raised +
                                                ", expected " + fx.invariant};
    }
  }
  return out;
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions &opts) {
  const std::size_t n = opts.quick ? std::max<std::size_t>(1, opts.trials / 10) : opts.trials;
  const std::size_t dim = opts.quick ? 4 : 6;
  const std::size_t heavy = std::max<std::size_t>(1, n / 4);
  const std::size_t roof = std::max<std::size_t>(1, n / 40);
  std::uint64_t stream = 0;
  auto rng = [&] { return random::make_rng(opts.seed, ++stream); };
  auto with_dim = [dim](Trial (*body)(Rng &, std::size_t)) {
    return [dim, body](Rng &r, std::size_t) { return body(r, dim); };
  };

  SelftestReport report;
  auto &s = report.suites;
  s.push_back(run_suite("qstate_spectral", n, rng(), with_dim(qstate_trial)));
  s.push_back(run_suite("majorize_chain_schur", n, rng(), with_dim(majorize_trial)));
  s.push_back(run_suite("coherence_vs_schmidt", n, rng(), with_dim(coherence_schmidt_trial)));
  s.push_back(run_suite("cnot_embedding", n, rng(), with_dim(cnot_trial)));
  s.push_back(run_suite("local_unitary_minimum", n, rng(), with_dim(local_unitary_trial)));
  s.push_back(run_suite("kraus_synthesis", n, rng(), with_dim(synthesis_trial)));
  s.push_back(run_suite("incoherent_majorization", n, rng(), [](Rng &r, std::size_t) {
    return incoherent_channel_trial(r, 5);
  }));
  s.push_back(run_suite("probability_formulas", n, rng(), with_dim(probability_trial)));
  s.push_back(run_suite("product_bound", n, rng(), [dim](Rng &r, std::size_t) {
    return product_bound_trial(r, dim + 2);
  }));
  s.push_back(run_suite("robustness", heavy, rng(), with_dim(robustness_trial)));
  s.push_back(run_suite("negativity_of_mc", n, rng(), with_dim(negativity_trial)));
  const std::size_t restarts = opts.quick ? 4 : 8;
  s.push_back(run_suite("roof_equality", roof, rng(), [restarts](Rng &r, std::size_t) {
    return roof_trial(r, restarts);
  }));
  s.push_back(validation_suite());
  return report;
}

}  // namespace qcoh
