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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcoh/prob_vector.hpp"
#include "qcoh/qstate.hpp"

namespace qcoh {

inline constexpr double kMajorizationTol = 1e-9;

// Majorization compares descending partial sums. Vectors of different
// length are zero-padded to the longer one.

/// x ≺ y: every prefix sum of x↓ is at most the matching prefix sum of y↓
/// (within tol) and the totals agree.
bool majorizes(const ProbVector &x, const ProbVector &y, double tol = kMajorizationTol);

/// min over k of (Σ_{i≤k} y↓_i − Σ_{i≤k} x↓_i). Nonnegative iff the prefix
/// conditions of x ≺ y hold exactly.
double majorization_slack(const ProbVector &x, const ProbVector &y);

/// x ≃ y: same nonzero entries up to permutation.
bool equiv(const ProbVector &x, const ProbVector &y, double tol = kMajorizationTol);

/// Two-coordinate doubly stochastic map [[a, 1−a], [1−a, a]] on (i, j).
struct TTransform {
  std::size_t i = 0;
  std::size_t j = 0;
  double a = 1.0;
};

void apply_t_transform(const TTransform &t, std::span<double> v);
std::vector<double> apply_chain(std::span<const TTransform> chain, std::vector<double> v);

/// T-transforms taking `source` to `target` (requires target ≺ source).
/// Indices refer to positions in `source` (zero-padded to the common
/// length). The result places the i-th largest target entry where the i-th
/// largest source entry sat (stable order), so it equals `target` exactly
/// when both are sorted alike. At most length − 1 transforms.
std::vector<TTransform> t_transform_chain(const ProbVector &target, const ProbVector &source,
                                          double tol = kMajorizationTol);

enum class FunctionalKind { Shannon, OneMinusMax, GeneralizedConcurrence, Renyi, Tail };
enum class ConcavityClass { Concave, SchurConcaveOnly };

/// A symmetric concave function on probability vectors.
class Functional {
 public:
  static Functional shannon();
  static Functional one_minus_max();
  /// d (Π p_j)^{1/d}; the ambient dimension is part of the definition.
  static Functional gc(std::size_t d);
  /// Rényi entropy, 0 ≤ alpha ≤ 1; alpha = 1 is Shannon.
  static Functional renyi(double alpha);
  /// Σ_{j ≥ m} p↓_j.
  static Functional tail(std::size_t m);

  /// Parses "shannon", "geom", "gc", "gc:<d>", "renyi:<alpha>", "tail:<m>".
  /// A bare "gc" takes `default_gc_dim`.
  static Functional parse(std::string_view text, std::optional<std::size_t> default_gc_dim = {});

  FunctionalKind kind() const noexcept { return kind_; }
  ConcavityClass concavity() const noexcept { return concavity_; }
  std::size_t dimension() const noexcept { return dim_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t m() const noexcept { return dim_; }
  std::string name() const;

  /// Same functional with gc rebound to dimension d; other kinds unchanged.
  Functional with_gc_dimension(std::size_t d) const;

 private:
  Functional(FunctionalKind kind, std::size_t dim, double alpha)
      : kind_(kind), dim_(dim), alpha_(alpha) {}

  FunctionalKind kind_;
  std::size_t dim_;  // gc dimension or tail index
  double alpha_;
  ConcavityClass concavity_ = ConcavityClass::Concave;
};

/// f(p) in bits. 0 log 0 = 0. gc is zero when any entry is zero and rejects
/// vectors longer than its dimension.
double evaluate(const Functional &f, const ProbVector &p);
double evaluate(const Functional &f, std::span<const double> p);

/// Allocation-free variant; clamps and sorts \`values\` in place.
double evaluate_inplace(const Functional &f, std::span<double> values);

/// f applied to the spectrum of rho: the unitarily invariant lift of f.
double evaluate_spectral(const Functional &f, const DensityMatrix &rho);

}  // namespace qcoh
