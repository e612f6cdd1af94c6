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
#include "qcoh/monotones.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "qcoh/errors.hpp"
#include "qcoh/random.hpp"

namespace qcoh {

ProbVector coherence_vector(std::span<const Complex> amplitudes) {
  std::vector<double> mu(amplitudes.size());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = std::norm(amplitudes[i]);
  return ProbVector::unchecked(std::move(mu));
}

ProbVector coherence_vector(const PureState &psi) { return coherence_vector(psi.amplitudes()); }

namespace {

bool is_gc(const Functional &f) { return f.kind() == FunctionalKind::GeneralizedConcurrence; }

void require_gc_dimension(const Functional &f, std::size_t expected, const char *what) {
  if (is_gc(f) && f.dimension() != expected)
    throw ValidationError("dims", "gc:" + std::to_string(f.dimension()) + " does not match " +
                                      what + " " + std::to_string(expected));
}

// Determinant of a small Hermitian PSD matrix by Gaussian elimination with
// partial pivoting. Destroys the buffer.
double hermitian_det(std::span<Complex> a, std::size_t n) {
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::norm(a[r * n + col]) > std::norm(a[pivot * n + col])) pivot = r;
    const Complex p = a[pivot * n + col];
    if (p == Complex{}) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      det = -det;
    }
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = a[r * n + col] / p;
      if (factor == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return std::max(0.0, det.real());
}

// w · f(normalized profile) for an unnormalized member vector, where the
// profile is the coherence vector or the Schmidt vector. Reuses scratch.
class MemberCost {
 public:
  MemberCost(const Functional &f, const RoofKind &kind, std::size_t dim)
      : f_(f), kind_(kind), dim_(dim), gc_(is_gc(f)) {
    if (kind.is_entanglement()) {
      small_ = std::min(kind.dims().b, kind.dims().a);
      gram_.resize(small_ * small_);
      profile_.resize(small_);
    } else {
      profile_.resize(dim);
    }
  }

  // Evaluates f on (1 - eta) p + eta u, with u uniform, instead of on p.
  void set_smoothing(double eta) { eta_ = eta; }

  double operator()(std::span<const Complex> z) {
    if (!kind_.is_entanglement()) {
      double w = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) w += (profile_[i] = std::norm(z[i]));
      if (w <= 0.0) return 0.0;
      const double shift = eta_ / static_cast<double>(dim_);
      if (gc_) {
        double product = 1.0;
        for (double p : profile_) product *= (1.0 - eta_) * p / w + shift;
        return w * static_cast<double>(dim_) * std::pow(product, 1.0 / static_cast<double>(dim_));
      }
      for (auto &p : profile_) p = (1.0 - eta_) * p / w + shift;
      return w * evaluate_inplace(f_, profile_);
    }
    const std::size_t db = kind_.dims().b, da = kind_.dims().a;
    const bool via_b = db <= da;
    const std::size_t inner_dim = via_b ? da : db;
    // Gram matrix of the smaller side: C C^† or C^T conj(C).
    double w = 0.0;
    for (std::size_t i = 0; i < small_; ++i) {
      for (std::size_t j = i; j < small_; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < inner_dim; ++k) {
          const Complex x = via_b ? z[i * da + k] : z[k * da + i];
          const Complex y = via_b ? z[j * da + k] : z[k * da + j];
          s += x * std::conj(y);
        }
        gram_[i * small_ + j] = s;
        gram_[j * small_ + i] = std::conj(s);
      }
      w += gram_[i * small_ + i].real();
    }
    if (w <= 0.0) return 0.0;
    const double shift = eta_ / static_cast<double>(small_);
    if (gc_) {
      if (eta_ > 0.0) {
        for (auto &g : gram_) g *= 1.0 - eta_;
        for (std::size_t i = 0; i < small_; ++i) gram_[i * small_ + i] += w * shift;
      }
      // d (Π λ)^{1/d} with Π λ the Gram determinant; f is 1-homogeneous.
      const double det = hermitian_det(gram_, small_);
      return static_cast<double>(small_) * std::pow(det, 1.0 / static_cast<double>(small_));
    }
    jacobi_inplace(gram_, small_);
    for (std::size_t i = 0; i < small_; ++i) profile_[i] = (1.0 - eta_) * gram_[i * small_ + i].real() / w + shift;
    return w * evaluate_inplace(f_, profile_);
  }

 private:
  const Functional &f_;
  const RoofKind &kind_;
  std::size_t dim_;
  bool gc_;
  std::size_t small_ = 0;
  double eta_ = 0.0;
  std::vector<Complex> gram_;
  std::vector<double> profile_;
};

}  // namespace

double c_f_pure(const Functional &f, const PureState &psi) {
  require_gc_dimension(f, psi.dim(), "state dimension");
  return evaluate(f, coherence_vector(psi));
}

double e_f_pure(const Functional &f, const BipartitePureState &psi) {
  const auto dims = psi.dims();
  require_gc_dimension(f, std::min(dims.b, dims.a), "Schmidt dimension");
  if (is_gc(f)) {
    // The product of Schmidt coefficients is the reduced-state determinant,
    // which stays accurate when a coefficient vanishes.
    const RoofKind kind = RoofKind::entanglement(dims);
    MemberCost cost(f, kind, dims.total());
    return cost(psi.amplitudes());
  }
  return evaluate(f, schmidt_coefficients(psi));
}

// ---------------------------------------------------------------------------
// Convex roof search

namespace {

struct RestartResult {
  double value = std::numeric_limits<double>::infinity();
  std::vector<Complex> members;  // m × dim, unnormalized
  bool converged = false;
  std::size_t sweeps = 0;
};

struct LinePoint {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

// Brent minimization of fn on [lo, hi]; keeps whichever of the result and
// the incoming best point is lower.
template <typename Fn>
LinePoint line_minimize(Fn &&fn, double lo, double hi, LinePoint best, bool over_theta) {
  constexpr int kBits = 24;
  std::uintmax_t max_iter = 40;
  const auto [x, v] = boost::math::tools::brent_find_minima(fn, lo, hi, kBits, max_iter);
  if (v < best.value) {
    best.value = v;
    (over_theta ? best.theta : best.phi) = x;
  }
  return best;
}

// Members with vanishing amplitudes sit on cusps of most functionals, where
// pairwise rotations stall. Each restart first optimizes smoothed costs and
// finishes on the exact one.
constexpr double kSmoothingSchedule[] = {1e-1, 1e-2, 1e-3, 1e-4, 0.0};
constexpr std::size_t kSmoothedSweeps = 30;
constexpr double kSmoothedTol = 1e-5;

class RoofSearch {
 public:
  RoofSearch(const Functional &f, const RoofKind &kind, std::size_t dim, std::size_t members,
             const RoofOptions &opts)
      : cost_(f, kind, dim), dim_(dim), m_(members), opts_(opts), t1_(dim), t2_(dim) {}

  RestartResult run(std::vector<Complex> w) {
    const std::vector<Complex> start = w;
    w_ = std::move(w);
    RestartResult out;
    for (double eta : kSmoothingSchedule) descend(eta, out);
    const double start_value = exact_value(start);
    // Smoothing can flatten a piecewise-constant f (renyi:0) and drift away
    // from a better start; the exact descent from the start is the fallback.
    if (out.value > start_value) {
      RestartResult plain;
      w_ = start;
      descend(0.0, plain);
      plain.sweeps += out.sweeps;
      if (plain.value <= out.value) return plain;
      out.sweeps = plain.sweeps;
    }
    return out;
  }

 private:
  double exact_value(std::span<const Complex> w) {
    cost_.set_smoothing(0.0);
    double v = 0.0;
    for (std::size_t k = 0; k < m_; ++k) v += cost_(w.subspan(k * dim_, dim_));
    return v;
  }

  // One stage of the schedule; leaves w_ in place and, on the exact stage,
  // fills value and members.
  void descend(double eta, RestartResult &out) {
    cost_.set_smoothing(eta);
    costs_.assign(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) costs_[k] = cost_(row(k));
    const bool exact = eta == 0.0;
    const std::size_t max_sweeps = exact ? opts_.max_iters : kSmoothedSweeps;
    const double tol = exact ? opts_.tol : std::max(opts_.tol, kSmoothedTol);
    out.converged = false;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      double gain = 0.0;
      for (std::size_t k1 = 0; k1 + 1 < m_; ++k1)
        for (std::size_t k2 = k1 + 1; k2 < m_; ++k2) gain += improve_pair(k1, k2);
      ++out.sweeps;
      if (gain < tol) {
        out.converged = true;
        break;
      }
    }
    if (!exact) return;
    out.value = 0.0;
    for (std::size_t k = 0; k < m_; ++k) out.value += costs_[k] = cost_(row(k));
    out.members = w_;
  }

  std::span<const Complex> row(std::size_t k) const {
    return std::span<const Complex>(w_).subspan(k * dim_, dim_);
  }

  void rotate(std::size_t k1, std::size_t k2, double theta, double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    const auto r1 = row(k1), r2 = row(k2);
    for (std::size_t i = 0; i < dim_; ++i) {
      t1_[i] = c * r1[i] - e * s * r2[i];
      t2_[i] = std::conj(e) * s * r1[i] + c * r2[i];
    }
  }

  double pair_value(std::size_t k1, std::size_t k2, double theta, double phi) {
    rotate(k1, k2, theta, phi);
    return cost_(t1_) + cost_(t2_);
  }

  double improve_pair(std::size_t k1, std::size_t k2) {
    constexpr double kPi = std::numbers::pi;
    const double current = costs_[k1] + costs_[k2];
    if (norm2(row(k1)) == 0.0 && norm2(row(k2)) == 0.0) return 0.0;

    LinePoint best{0.0, 0.0, current};
    for (double phi : {0.0, kPi / 2}) {
      for (double theta : {-3 * kPi / 8, -kPi / 4, -kPi / 8, kPi / 8, kPi / 4, 3 * kPi / 8,
                           kPi / 2}) {
        const double v = pair_value(k1, k2, theta, phi);
        if (v < best.value) best = {theta, phi, v};
      }
    }
    auto along_theta = [&](double phi) {
      return [&, phi](double t) { return pair_value(k1, k2, t, phi); };
    };
    best = line_minimize(along_theta(best.phi), best.theta - kPi / 8, best.theta + kPi / 8,
                         best, true);
    if (best.theta != 0.0) {
      const double theta = best.theta;
      best = line_minimize([&](double p) { return pair_value(k1, k2, theta, p); },
                           best.phi - kPi / 2, best.phi + kPi / 2, best, false);
      best = line_minimize(along_theta(best.phi), best.theta - kPi / 64,
                           best.theta + kPi / 64, best, true);
    }
    if (!(best.value < current)) return 0.0;
    rotate(k1, k2, best.theta, best.phi);
    std::copy(t1_.begin(), t1_.end(), w_.begin() + static_cast<std::ptrdiff_t>(k1 * dim_));
    std::copy(t2_.begin(), t2_.end(), w_.begin() + static_cast<std::ptrdiff_t>(k2 * dim_));
    costs_[k1] = cost_(row(k1));
    costs_[k2] = cost_(row(k2));
    return current - (costs_[k1] + costs_[k2]);
  }

  MemberCost cost_;
  std::size_t dim_;
  std::size_t m_;
  const RoofOptions &opts_;
  std::vector<Complex> w_;
  std::vector<double> costs_;
  std::vector<Complex> t1_, t2_;
};

}  // namespace

RoofEstimate convex_roof(const Functional &f, const DensityMatrix &rho, const RoofKind &kind,
                         const RoofOptions &opts) {
  const std::size_t dim = rho.dim();
  if (kind.is_entanglement()) {
    const auto dims = kind.dims();
    if (dims.b < 1 || dims.a < 1 || dims.total() != dim)
      throw ValidationError("dims", "bipartite dims do not factor the state dimension " +
                                        std::to_string(dim));
    require_gc_dimension(f, std::min(dims.b, dims.a), "Schmidt dimension");
  } else {
    require_gc_dimension(f, dim, "state dimension");
  }
  if (opts.restarts < 1) throw ValidationError("parameter", "restarts must be >= 1");

  // ρ = Σ_l |b_l><b_l| with b_l = sqrt(λ_l) e_l over the numerical support.
  const EigenSystem eig = hermitian_eig(rho.matrix());
  constexpr double kRankTol = 1e-12;
  std::size_t rank = 0;
  while (rank < dim && eig.values[rank] > kRankTol) ++rank;
  if (rank == 0) throw ValidationError("psd", "state has no positive eigenvalue");
  const std::size_t m = opts.ensemble_size ? opts.ensemble_size : rank * rank;
  if (m < rank)
    throw ValidationError("parameter", "ensemble size " + std::to_string(m) +
                                           " is below the rank " + std::to_string(rank));
  std::vector<Complex> basis(rank * dim);
  for (std::size_t l = 0; l < rank; ++l) {
    const double amp = std::sqrt(eig.values[l]);
    for (std::size_t i = 0; i < dim; ++i) basis[l * dim + i] = amp * eig.vectors(i, l);
  }
  auto members_from = [&](const ComplexMatrix &v) {  // v is m × rank
    std::vector<Complex> w(m * dim);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < rank; ++l) {
        const Complex c = v(k, l);
        if (c == Complex{}) continue;
        for (std::size_t i = 0; i < dim; ++i) w[k * dim + i] += c * basis[l * dim + i];
      }
    return w;
  };

  const std::size_t restarts = rank == 1 ? 1 : opts.restarts;
  std::vector<RestartResult> results(restarts);
  auto run_restart = [&](std::size_t index) {
    ComplexMatrix v(m, rank);
    if (index == 0) {
      for (std::size_t l = 0; l < rank; ++l) v(l, l) = 1.0;
    } else {
      auto rng = random::make_rng(opts.seed, index);
      v = random::random_isometry(rng, m, rank);
    }
    RoofSearch search(f, kind, dim, m, opts);
    results[index] = search.run(members_from(v));
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, restarts));
  if (threads <= 1) {
    for (std::size_t i = 0; i < restarts; ++i) run_restart(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < restarts;) run_restart(i);
      });
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < restarts; ++i)
    if (results[i].value < results[best].value) best = i;
  RestartResult &win = results[best];

  RoofEstimate out;
  out.restarts = restarts;
  out.best_restart = best;
  out.converged = win.converged;
  out.iterations = win.sweeps;
  constexpr double kNegligibleWeight = 1e-14;
  MemberCost cost(f, kind, dim);
  out.value = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    std::span<const Complex> z(win.members.data() + k * dim, dim);
    const double w = norm2(z);
    if (w <= kNegligibleWeight) continue;
    out.value += cost(z);
    out.ensemble.push_back({w, PureState::normalized(ComplexVector(z.begin(), z.end()))});
  }
  return out;
}

}  // namespace qcoh
