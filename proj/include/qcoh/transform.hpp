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

#include <optional>
#include <vector>

#include "qcoh/majorize.hpp"
#include "qcoh/qstate.hpp"
#include "qcoh/random.hpp"

namespace qcoh {

enum class KrausClass { StrictlyIncoherent, Incoherent, Neither };

const char *to_string(KrausClass c);

inline constexpr double kKrausZeroTol = 1e-12;  // relative to max |K_ij|

/// Incoherent: at most one nonzero per column. Strictly incoherent: also at
/// most one per row.
KrausClass classify_kraus(const ComplexMatrix &k);

/// Operators of a common shape (d_out × d_in) and their joint class.
class KrausSet {
 public:
  KrausSet() = default;
  explicit KrausSet(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix> &operators() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  KrausClass kraus_class() const noexcept { return class_; }
  std::size_t input_dim() const noexcept { return ops_.empty() ? 0 : ops_.front().cols(); }
  std::size_t output_dim() const noexcept { return ops_.empty() ? 0 : ops_.front().rows(); }

  /// max |Σ K^†K − I|.
  double completeness_residual() const;
  bool is_complete(double tol = 1e-10) const { return completeness_residual() <= tol; }

 private:
  std::vector<ComplexMatrix> ops_;
  KrausClass class_ = KrausClass::StrictlyIncoherent;
};

inline constexpr double kZeroProbability = 1e-14;

struct PureOutcome {
  std::size_t index = 0;  // position of the Kraus operator
  double probability = 0.0;
  PureState state;
};

struct MixedOutcome {
  std::size_t index = 0;
  double probability = 0.0;
  DensityMatrix state;
};

/// σ_n = K_n ρ K_n^† / p_n. Branches with p_n <= kZeroProbability are dropped.
std::vector<PureOutcome> apply_selective(const PureState &psi, const KrausSet &k);
std::vector<MixedOutcome> apply_selective(const DensityMatrix &rho, const KrausSet &k);

/// μ(ψ) ≺ μ(φ).
bool can_transform(const PureState &psi, const PureState &phi);

/// Strictly incoherent protocol taking ψ to φ on every branch, up to a
/// global phase. Throws NotMajorizedError when the transformation is
/// impossible.
KrausSet synthesize_io(const PureState &psi, const PureState &phi);

/// min over m of Σ_{j>=m} μ↓_j(ψ) / Σ_{j>=m} μ↓_j(φ), skipping zero
/// denominators; exactly 1 when can_transform holds.
double max_prob_coherent(const PureState &psi, const PureState &phi);

struct EntangledProbability {
  double upper_bound = 0.0;
  bool exact = false;  // target coefficient matrix is diagonal
};

/// Tail-ratio bound against the Schmidt vector of Φ. For a diagonal
/// coefficient matrix λ is read off the diagonal and the bound is attained.
EntangledProbability max_prob_entangled(const PureState &psi, const BipartitePureState &target);

struct ConversionCheck {
  bool necessary_holds = false;   // μ(ψ) ≺ λ(Φ)
  bool schmidt_form_target = false;
  std::optional<bool> iff_verdict;  // only for Schmidt-form targets
};

ConversionCheck conversion_criterion_check(const PureState &psi,
                                           const BipartitePureState &target);

struct IncoherentMajorization {
  ProbVector lhs;  // μ(ψ)
  ProbVector rhs;  // Σ_n p_n μ↓(φ_n) over branches with p_n > 0
  double slack = 0.0;
  bool holds = false;
};

/// Checks μ(ψ) ≺ Σ_n p_n μ↓(φ_n) for a complete incoherent Kraus set.
IncoherentMajorization incoherent_majorization_check(const PureState &psi, const KrausSet &k);

/// Random complete SIO on C^d: each operator maps basis states injectively,
/// normalized by the (diagonal) Gram sum.
KrausSet random_sio_channel(random::Rng &rng, std::size_t d, std::size_t operators);

/// Random complete IO on C^d: each operator sends every column to one
/// random row. The set is scaled by its largest Gram eigenvalue and the
/// remainder is completed by single-row operators.
KrausSet random_io_channel(random::Rng &rng, std::size_t d, std::size_t operators);

}  // namespace qcoh
