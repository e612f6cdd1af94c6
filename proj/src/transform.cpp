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
#include "qcoh/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcoh/errors.hpp"
#include "qcoh/mapping.hpp"
#include "qcoh/monotones.hpp"

namespace qcoh {

const char *to_string(KrausClass c) {
  switch (c) {
    case KrausClass::StrictlyIncoherent:
      return "SIO";
    case KrausClass::Incoherent:
      return "IO";
    case KrausClass::Neither:
      break;
  }
  return "neither";
}

KrausClass classify_kraus(const ComplexMatrix &k) {
  const double zero = kKrausZeroTol * k.max_abs();
  std::vector<std::size_t> per_row(k.rows(), 0), per_col(k.cols(), 0);
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < k.cols(); ++c)
      if (std::abs(k(r, c)) > zero) {
        ++per_row[r];
        ++per_col[c];
      }
  auto at_most_one = [](const std::vector<std::size_t> &v) {
    return std::ranges::all_of(v, [](std::size_t n) { return n <= 1; });
  };
  if (!at_most_one(per_col)) return KrausClass::Neither;
  return at_most_one(per_row) ? KrausClass::StrictlyIncoherent : KrausClass::Incoherent;
}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw ValidationError("dims", "a Kraus set needs at least one operator");
  for (const auto &k : ops_) {
    if (k.rows() != ops_.front().rows() || k.cols() != ops_.front().cols())
      throw ValidationError("dims", "Kraus operators must share one shape");
    class_ = std::max(class_, classify_kraus(k));
  }
}

double KrausSet::completeness_residual() const {
  ComplexMatrix sum(input_dim(), input_dim());
  for (const auto &k : ops_) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::identity(input_dim())).max_abs();
}

namespace {

void require_channel(const KrausSet &k, std::size_t dim) {
  if (k.input_dim() != dim)
    throw ValidationError("dims", "Kraus input dimension " + std::to_string(k.input_dim()) +
                                      " does not match state dimension " + std::to_string(dim));
  if (!k.is_complete())
    throw ValidationError("completeness", "Kraus set is not trace preserving, residual " +
                                              std::to_string(k.completeness_residual()));
}

}  // namespace

std::vector<PureOutcome> apply_selective(const PureState &psi, const KrausSet &k) {
  require_channel(k, psi.dim());
  std::vector<PureOutcome> out;
  for (std::size_t n = 0; n < k.size(); ++n) {
    ComplexVector v = k.operators()[n].apply(psi.amplitudes());
    const double p = norm2(v);
    if (p <= kZeroProbability) continue;
    out.push_back({n, p, PureState::normalized(std::move(v))});
  }
  return out;
}

std::vector<MixedOutcome> apply_selective(const DensityMatrix &rho, const KrausSet &k) {
  require_channel(k, rho.dim());
  std::vector<MixedOutcome> out;
  for (std::size_t n = 0; n < k.size(); ++n) {
    const auto &op = k.operators()[n];
    ComplexMatrix sigma = op * rho.matrix() * op.adjoint();
    const double p = sigma.trace().real();
    if (p <= kZeroProbability) continue;
    sigma *= Complex(1.0 / p);
    out.push_back({n, p, DensityMatrix::unchecked(std::move(sigma))});
  }
  return out;
}

bool can_transform(const PureState &psi, const PureState &phi) {
  return majorizes(coherence_vector(psi), coherence_vector(phi));
}

// ---------------------------------------------------------------------------
// Protocol synthesis

namespace {

// Indices of the amplitudes in descending modulus (stable).
std::vector<std::size_t> descending_order(const PureState &s) {
  std::vector<std::size_t> order(s.dim());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
    return std::norm(s[a]) > std::norm(s[b]);
  });
  return order;
}

// The two operators of one T-stage on the frame. `before` holds the
// amplitudes ψ on entry, `after` the amplitudes φ on exit, with
// ψ_i² = a φ_i² + (1−a) φ_j² and ψ_j² = (1−a) φ_i² + a φ_j².
std::pair<ComplexMatrix, ComplexMatrix> stage_operators(std::size_t n, const TTransform &t,
                                                        std::span<const double> before,
                                                        std::span<const double> after) {
  const double sa = std::sqrt(t.a), sb = std::sqrt(1.0 - t.a);
  ComplexMatrix k1 = ComplexMatrix::identity(n) * Complex(sa);
  ComplexMatrix k2 = ComplexMatrix::identity(n) * Complex(sb);
  const std::size_t i = t.i, j = t.j;
  // A zero input amplitude leaves its column free; unit ratios keep the
  // stage complete.
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 1.0; };
  k1(i, i) = sa * ratio(after[i], before[i]);
  k1(j, j) = sa * ratio(after[j], before[j]);
  k2(i, i) = 0.0;
  k2(j, j) = 0.0;
  k2(i, j) = sb * ratio(after[i], before[j]);
  k2(j, i) = sb * ratio(after[j], before[i]);
  return {std::move(k1), std::move(k2)};
}

constexpr std::size_t kMaxStages = 20;

}  // namespace

KrausSet synthesize_io(const PureState &psi, const PureState &phi) {
  const ProbVector mu_psi = coherence_vector(psi), mu_phi = coherence_vector(phi);
  if (!majorizes(mu_psi, mu_phi))
    throw NotMajorizedError("not majorized: mu(psi) is not majorized by mu(phi)");
  const std::size_t din = psi.dim(), dout = phi.dim();
  const std::size_t n = std::max(din, dout);

  // The frame holds nonnegative amplitudes in descending order.
  const auto order_in = descending_order(psi), order_out = descending_order(phi);
  ComplexMatrix enter(n, din);
  for (std::size_t r = 0; r < din; ++r) {
    const Complex a = psi[order_in[r]];
    enter(r, order_in[r]) = a == Complex{} ? Complex(1.0) : std::polar(1.0, -std::arg(a));
  }
  std::vector<ComplexMatrix> exits;
  {
    ComplexMatrix main(dout, n);
    for (std::size_t r = 0; r < dout; ++r) {
      const Complex a = phi[order_out[r]];
      main(order_out[r], r) = a == Complex{} ? Complex(1.0) : std::polar(1.0, std::arg(a));
    }
    exits.push_back(std::move(main));
    // Frame positions beyond the output dimension carry no amplitude of φ;
    // they still need somewhere to go.
    for (std::size_t r = dout; r < n; ++r) {
      ComplexMatrix spill(dout, n);
      spill(0, r) = 1.0;
      exits.push_back(std::move(spill));
    }
  }

  // Profiles y_0 = μ↓(φ), y_s = T_s y_{s-1}; the protocol walks them backwards.
  std::vector<double> target(n, 0.0);
  for (std::size_t r = 0; r < dout; ++r) target[r] = mu_phi[order_out[r]];
  std::vector<double> start(n, 0.0);
  for (std::size_t r = 0; r < din; ++r) start[r] = mu_psi[order_in[r]];
  const auto chain = t_transform_chain(ProbVector::unchecked(start), ProbVector::unchecked(target));
  if (chain.size() > kMaxStages)
    throw ValidationError("dims", "protocol needs " + std::to_string(chain.size()) +
                                      " stages; at most " + std::to_string(kMaxStages) +
                                      " are composed");
  std::vector<std::vector<double>> profiles{target};
  for (const auto &t : chain) {
    auto next = profiles.back();
    apply_t_transform(t, next);
    profiles.push_back(std::move(next));
  }
  auto amplitudes = [](const std::vector<double> &p) {
    std::vector<double> a(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) a[i] = std::sqrt(std::max(0.0, p[i]));
    return a;
  };

  // Branch products, first-applied stage on the right.
  std::vector<ComplexMatrix> branches{enter};
  for (std::size_t s = chain.size(); s-- > 0;) {
    const auto before = amplitudes(profiles[s + 1]), after = amplitudes(profiles[s]);
    const auto [k1, k2] = stage_operators(n, chain[s], before, after);
    std::vector<ComplexMatrix> next;
    next.reserve(branches.size() * 2);
    for (const auto &b : branches) {
      next.push_back(k1 * b);
      next.push_back(k2 * b);
    }
    branches = std::move(next);
  }
  std::vector<ComplexMatrix> ops;
  constexpr double kNegligible = 1e-14;
  for (const auto &exit : exits)
    for (const auto &b : branches) {
      ComplexMatrix k = exit * b;
      if (k.max_abs() > kNegligible) ops.push_back(std::move(k));
    }
  return KrausSet(std::move(ops));
}

// ---------------------------------------------------------------------------
// Conversion probabilities

namespace {

double tail_ratio_min(std::vector<double> num, std::vector<double> den) {
  const std::size_t n = std::max(num.size(), den.size());
  num.resize(n, 0.0);
  den.resize(n, 0.0);
  std::ranges::sort(num, std::greater<>());
  std::ranges::sort(den, std::greater<>());
  double best = 1.0, tail_num = 0.0, tail_den = 0.0;
  for (std::size_t m = n; m-- > 0;) {
    tail_num += num[m];
    tail_den += den[m];
    if (tail_den <= 0.0) continue;
    best = std::min(best, tail_num / tail_den);
  }
  return std::clamp(best, 0.0, 1.0);
}

bool diagonal_coefficients(const BipartitePureState &target) {
  const auto dims = target.dims();
  double max_abs = 0.0;
  for (const Complex &c : target.amplitudes()) max_abs = std::max(max_abs, std::abs(c));
  for (std::size_t j = 0; j < dims.b; ++j)
    for (std::size_t k = 0; k < dims.a; ++k)
      if (j != k && std::abs(target.amplitudes()[j * dims.a + k]) > kFormZeroTol * max_abs)
        return false;
  return true;
}

ProbVector target_lambda(const BipartitePureState &target, bool diagonal) {
  if (!diagonal) return schmidt_coefficients(target);
  const auto dims = target.dims();
  std::vector<double> lambda(std::min(dims.b, dims.a));
  for (std::size_t j = 0; j < lambda.size(); ++j)
    lambda[j] = std::norm(target.amplitudes()[j * dims.a + j]);
  return ProbVector::unchecked(std::move(lambda));
}

}  // namespace

double max_prob_coherent(const PureState &psi, const PureState &phi) {
  const ProbVector a = coherence_vector(psi), b = coherence_vector(phi);
  if (majorizes(a, b)) return 1.0;
  return tail_ratio_min(a.sorted_desc(), b.sorted_desc());
}

EntangledProbability max_prob_entangled(const PureState &psi, const BipartitePureState &target) {
  EntangledProbability out;
  out.exact = diagonal_coefficients(target);
  const ProbVector a = coherence_vector(psi), b = target_lambda(target, out.exact);
  out.upper_bound = majorizes(a, b) ? 1.0 : tail_ratio_min(a.sorted_desc(), b.sorted_desc());
  return out;
}

ConversionCheck conversion_criterion_check(const PureState &psi,
                                           const BipartitePureState &target) {
  ConversionCheck out;
  out.schmidt_form_target = diagonal_coefficients(target);
  out.necessary_holds =
      majorizes(coherence_vector(psi), target_lambda(target, out.schmidt_form_target));
  if (out.schmidt_form_target) out.iff_verdict = out.necessary_holds;
  return out;
}

IncoherentMajorization incoherent_majorization_check(const PureState &psi, const KrausSet &k) {
  if (k.kraus_class() == KrausClass::Neither)
    throw ValidationError("incoherent", "Kraus set contains an operator that is not incoherent");
  require_channel(k, psi.dim());
  std::vector<double> rhs(k.output_dim(), 0.0);
  for (const auto &op : k.operators()) {
    const ComplexVector v = op.apply(psi.amplitudes());
    std::vector<double> weights(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) weights[i] = std::norm(v[i]);
    // p_n μ↓(φ_n) is the sorted vector of |K_n ψ|² entries.
    std::ranges::sort(weights, std::greater<>());
    for (std::size_t i = 0; i < v.size(); ++i) rhs[i] += weights[i];
  }
  IncoherentMajorization out;
  out.lhs = coherence_vector(psi);
  out.rhs = ProbVector::unchecked(std::move(rhs));
  out.slack = majorization_slack(out.lhs, out.rhs);
  out.holds = majorizes(out.lhs, out.rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Random incoherent channels

namespace {

ComplexMatrix pattern_operator(random::Rng &rng, std::size_t d, std::span<const std::size_t> row_of) {
  const auto values = random::gaussian_vector(rng, d);
  ComplexMatrix k(d, d);
  for (std::size_t c = 0; c < d; ++c) k(row_of[c], c) = values[c];
  return k;
}

ComplexMatrix gram_sum(const std::vector<ComplexMatrix> &ops) {
  ComplexMatrix g(ops.front().cols(), ops.front().cols());
  for (const auto &k : ops) g += k.adjoint() * k;
  return g;
}

void require_operator_count(std::size_t d, std::size_t operators) {
  if (d < 1 || operators < 1)
    throw ValidationError("parameter", "random channels need d >= 1 and at least one operator");
}

}  // namespace

KrausSet random_sio_channel(random::Rng &rng, std::size_t d, std::size_t operators) {
  require_operator_count(d, operators);
  constexpr double kSingular = 1e-12;
  for (;;) {
    std::vector<ComplexMatrix> ops;
    for (std::size_t n = 0; n < operators; ++n) {
      std::vector<std::size_t> row_of(d);
      std::iota(row_of.begin(), row_of.end(), 0);
      std::shuffle(row_of.begin(), row_of.end(), rng);
      ops.push_back(pattern_operator(rng, d, row_of));
    }
    const ComplexMatrix g = gram_sum(ops);  // diagonal for injective patterns
    std::vector<double> scale(d);
    bool singular = false;
    for (std::size_t c = 0; c < d; ++c) {
      singular = singular || g(c, c).real() < kSingular;
      scale[c] = 1.0 / std::sqrt(g(c, c).real());
    }
    if (singular) continue;
    const ComplexMatrix inv_sqrt = ComplexMatrix::diagonal(std::span<const double>(scale));
    for (auto &k : ops) k = k * inv_sqrt;
    return KrausSet(std::move(ops));
  }
}

KrausSet random_io_channel(random::Rng &rng, std::size_t d, std::size_t operators) {
  require_operator_count(d, operators);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::vector<ComplexMatrix> ops;
  for (std::size_t n = 0; n < operators; ++n) {
    std::vector<std::size_t> row_of(d);
    for (auto &r : row_of) r = pick(rng);
    ops.push_back(pattern_operator(rng, d, row_of));
  }
  const ComplexMatrix g = gram_sum(ops);
  const EigenSystem eig = hermitian_eig(g);
  const double s = 1.0 / std::sqrt(eig.values.front());
  for (auto &k : ops) k *= Complex(s);
  // I − s²G = Σ_i r_i |v_i><v_i| is covered by operators sqrt(r_i) |row><v_i|,
  // which have a single nonzero row and are therefore incoherent.
  constexpr double kNegligible = 1e-14;
  for (std::size_t i = 0; i < d; ++i) {
    const double r = 1.0 - s * s * eig.values[i];
    if (r <= kNegligible) continue;
    ComplexMatrix k(d, d);
    const std::size_t row = pick(rng);
    for (std::size_t c = 0; c < d; ++c) k(row, c) = std::sqrt(r) * std::conj(eig.vectors(c, i));
    ops.push_back(std::move(k));
  }
  return KrausSet(std::move(ops));
}

}  // namespace qcoh
