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
#include <string>
#include <utility>
#include <vector>

#include "qcoh/monotones.hpp"
#include "qcoh/qstate.hpp"

namespace qcoh {

/// Σ_{j≠k} |ρ_jk|.
double c_l1(const DensityMatrix &rho);

/// ‖ρ^{T_A}‖_1 − 1.
double negativity(const DensityMatrix &rho, BipartiteDims dims);

struct RobustnessOptions {
  double tol = 1e-6;          // gap between certified upper and lower values
  std::size_t max_cuts = 4000;
};

/// Minimizes Σ d_i − 1 subject to diag(d) ⪰ ρ.
struct RobustnessSolution {
  double value = 0.0;        // Σ certificate − 1, feasible
  double lower_bound = 0.0;  // relaxation value; value − lower_bound <= tol
  RealVector certificate;    // diagonal envelope d
  std::size_t cuts = 0;
  std::size_t rounds = 0;
  double residual_min_eig = 0.0;  // λ_min(diag(d) − ρ)
};

/// Cutting planes on the diagonal-envelope problem. Throws ConvergenceError
/// carrying the best bounds when max_cuts is exceeded.
RobustnessSolution robustness_coherence(const DensityMatrix &rho,
                                        const RobustnessOptions &opts = {});

struct ProductBound {
  double lhs = 0.0;  // d |Π c_j|^{2/d}
  double rhs = 0.0;  // (Σ|c_j|)² − (d−1) Σ|c_j|²
  bool holds = false;
  bool saturated = false;
};

/// For d >= 3 saturation means all |c_j| equal, or all equal but one that
/// vanishes; for d <= 2 the two sides always agree.
ProductBound product_bound_check(std::span<const Complex> c);

struct BoundCertificate {
  std::string measure;
  double lower_bound = 0.0;
  std::vector<std::pair<std::string, double>> witnesses;
  std::size_t dimension = 0;
  bool tight = false;
  std::optional<std::string> family;        // "symmetric", "isotropic", "maximally_correlated"
  std::optional<double> closed_form;        // exact value on a recognized family
  std::optional<double> upper_estimate;     // convex roof estimate, when requested
};

struct CertifyOptions {
  RobustnessOptions robustness;
  bool with_roof = false;  // also run the convex roof as an upper estimate
  RoofOptions roof;
  double meet_tol = 1e-3;  // bounds meeting this closely count as tight
};

/// max{0, max(c_l1, c_R) − (d−2)} as a lower bound on the gc coherence
/// concurrence. c_R enters through the solver's certified lower value.
BoundCertificate certify_cgc_lower(const DensityMatrix &rho, const CertifyOptions &opts = {});

/// max{0, max(N, e_R) − (d−2)} as a lower bound on the gc entanglement
/// concurrence of a d×d state. e_R is used only on recognized families.
BoundCertificate certify_egc_lower(const DensityMatrix &rho, BipartiteDims dims,
                                   const CertifyOptions &opts = {});

/// p |ψ><ψ| + (1−p) I/d with ψ the uniform superposition.
struct SymmetricFamily {
  DensityMatrix state;
  double fidelity = 0.0;  // p + (1−p)/d
  double c_l1 = 0.0;
  double c_r = 0.0;
  double c_gc = 0.0;
};

SymmetricFamily symmetric_family(std::size_t d, double p);

/// F |Φ><Φ| + (1−F)(I − |Φ><Φ|)/(d²−1) with Φ maximally entangled.
struct IsotropicFamily {
  DensityMatrix state;
  double negativity = 0.0;
  double e_r = 0.0;
  double e_gc = 0.0;
};

IsotropicFamily isotropic_family(std::size_t d, double fidelity);

/// Parameter p when ρ is a member of the symmetric family (to 1e-12).
std::optional<double> match_symmetric(const DensityMatrix &rho);
/// Fidelity F when ρ is an isotropic d×d state (to 1e-12).
std::optional<double> match_isotropic(const DensityMatrix &rho, BipartiteDims dims);
/// Σ ρ_jk |j><k| when ρ is supported on span{|jj>} (to 1e-12).
std::optional<DensityMatrix> match_maximally_correlated(const DensityMatrix &rho,
                                                        BipartiteDims dims);

}  // namespace qcoh
