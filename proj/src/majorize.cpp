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
#include "qcoh/majorize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

void check_entries(const ProbVector &p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] >= -ProbVector::kNegativeTol))
      throw ValidationError("probability",
                            "negative entry " + std::to_string(p[i]) + " at index " +
                                std::to_string(i));
}

struct PrefixComparison {
  double min_slack;
  double total_gap;
};

PrefixComparison compare_prefixes(const ProbVector &x, const ProbVector &y) {
  check_entries(x);
  check_entries(y);
  const std::size_t n = std::max(x.size(), y.size());
  const auto xs = x.sorted_desc(n);
  const auto ys = y.sorted_desc(n);
  double sx = 0.0, sy = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
    slack = std::min(slack, sy - sx);
  }
  if (n == 0) slack = 0.0;
  return {slack, std::abs(sx - sy)};
}

}  // namespace

bool majorizes(const ProbVector &x, const ProbVector &y, double tol) {
  const auto cmp = compare_prefixes(x, y);
  return cmp.min_slack >= -tol && cmp.total_gap <= tol;
}

double majorization_slack(const ProbVector &x, const ProbVector &y) {
  return compare_prefixes(x, y).min_slack;
}

bool equiv(const ProbVector &x, const ProbVector &y, double tol) {
  return majorizes(x, y, tol) && majorizes(y, x, tol);
}

void apply_t_transform(const TTransform &t, std::span<double> v) {
  const double vi = v[t.i], vj = v[t.j];
  v[t.i] = t.a * vi + (1.0 - t.a) * vj;
  v[t.j] = (1.0 - t.a) * vi + t.a * vj;
}

std::vector<double> apply_chain(std::span<const TTransform> chain, std::vector<double> v) {
  for (const auto &t : chain) apply_t_transform(t, v);
  return v;
}

std::vector<TTransform> t_transform_chain(const ProbVector &target, const ProbVector &source,
                                          double tol) {
  if (!majorizes(target, source, tol))
    throw NotMajorizedError("not majorized: target is not majorized by source");
  const std::size_t n = std::max(target.size(), source.size());
  const std::vector<double> x = target.sorted_desc(n);
  std::vector<double> y(source.begin(), source.end());
  y.resize(n, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
  std::vector<double> ys(n);
  for (std::size_t r = 0; r < n; ++r) ys[r] = y[order[r]];

  // Hardy–Littlewood–Pólya: each step moves mass from the last surplus
  // position to the first deficit after it, matching one more coordinate.
  constexpr double kMatched = 1e-15;
  std::vector<TTransform> chain;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> j;
    for (std::size_t r = n; r-- > 0;)
      if (ys[r] - x[r] > kMatched) {
        j = r;
        break;
      }
    if (!j) break;
    std::optional<std::size_t> k;
    for (std::size_t r = *j + 1; r < n; ++r)
      if (x[r] - ys[r] > kMatched) {
        k = r;
        break;
      }
    if (!k) break;
    const double surplus = ys[*j] - x[*j];
    const double deficit = x[*k] - ys[*k];
    const double delta = std::min(surplus, deficit);
    const double spread = ys[*j] - ys[*k];
    const double a = std::clamp(1.0 - delta / spread, 0.0, 1.0);
    chain.push_back({order[*j], order[*k], a});
    if (surplus <= deficit) {
      ys[*j] = x[*j];
      ys[*k] += delta;
    } else {
      ys[*k] = x[*k];
      ys[*j] -= delta;
    }
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Functionals

Functional Functional::shannon() { return {FunctionalKind::Shannon, 0, 1.0}; }
Functional Functional::one_minus_max() { return {FunctionalKind::OneMinusMax, 0, 0.0}; }

Functional Functional::gc(std::size_t d) {
  if (d < 1) throw ValidationError("parameter", "gc dimension must be >= 1");
  return {FunctionalKind::GeneralizedConcurrence, d, 0.0};
}

Functional Functional::renyi(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ValidationError("parameter", "renyi alpha must lie in [0, 1]");
  return {FunctionalKind::Renyi, 0, alpha};
}

Functional Functional::tail(std::size_t m) {
  if (m < 1) throw ValidationError("parameter", "tail index m must be >= 1");
  return {FunctionalKind::Tail, m, 0.0};
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      value = std::stod(std::string(text), &used);
      if (used == text.size()) return value;
    } catch (const std::exception &) {
    }
  } else {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  }
  throw ValidationError("parameter",
                        "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
}

}  // namespace

Functional Functional::parse(std::string_view text, std::optional<std::size_t> default_gc_dim) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (head == "shannon" && arg.empty()) return shannon();
  if ((head == "geom" || head == "one_minus_max") && arg.empty()) return one_minus_max();
  if (head == "gc") {
    if (!arg.empty()) return gc(parse_number<std::size_t>(arg, "gc dimension"));
    if (default_gc_dim) return gc(*default_gc_dim);
    throw ValidationError("parameter", "gc needs a dimension (gc:<d>)");
  }
  if (head == "renyi" && !arg.empty()) return renyi(parse_number<double>(arg, "renyi alpha"));
  if (head == "tail" && !arg.empty()) return tail(parse_number<std::size_t>(arg, "tail index"));
  throw ValidationError("parameter", "unknown functional '" + std::string(text) + "'");
}

std::string Functional::name() const {
  switch (kind_) {
    case FunctionalKind::Shannon:
      return "shannon";
    case FunctionalKind::OneMinusMax:
      return "geom";
    case FunctionalKind::GeneralizedConcurrence:
      return "gc:" + std::to_string(dim_);
    case FunctionalKind::Renyi: {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, alpha_);
      (void)ec;
      return "renyi:" + std::string(buf, ptr);
    }
    case FunctionalKind::Tail:
      return "tail:" + std::to_string(dim_);
  }
  return "unknown";
}

Functional Functional::with_gc_dimension(std::size_t d) const {
  return kind_ == FunctionalKind::GeneralizedConcurrence ? gc(d) : *this;
}

namespace {

double shannon_bits(std::span<const double> sorted) {
  double h = 0.0;
  for (double p : sorted)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

}  // namespace

double evaluate(const Functional &f, std::span<const double> p) {
  std::vector<double> s(p.begin(), p.end());
  return evaluate_inplace(f, s);
}

double evaluate_inplace(const Functional &f, std::span<double> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] >= -ProbVector::kNegativeTol))
      throw ValidationError("probability", "negative entry at index " + std::to_string(i));
    s[i] = std::max(0.0, s[i]);
  }
  // Sorting first makes every functional exactly permutation invariant.
  std::sort(s.begin(), s.end(), std::greater<>());
  switch (f.kind()) {
    case FunctionalKind::Shannon:
      return shannon_bits(s);
    case FunctionalKind::OneMinusMax:
      return s.empty() ? 1.0 : 1.0 - s.front();
    case FunctionalKind::GeneralizedConcurrence: {
      const std::size_t d = f.dimension();
      if (s.size() > d)
        throw ValidationError("dims", "gc:" + std::to_string(d) + " applied to a vector of length " +
                                          std::to_string(s.size()));
      if (s.size() < d || s.back() <= 0.0) return 0.0;
      double log_sum = 0.0;
      for (double v : s) log_sum += std::log(v);
      return static_cast<double>(d) * std::exp(log_sum / static_cast<double>(d));
    }
    case FunctionalKind::Renyi: {
      const double alpha = f.alpha();
      if (alpha == 1.0) return shannon_bits(s);
      if (alpha == 0.0) {
        // Entries below round-off are not counted as support.
        constexpr double kSupportTol = 1e-14;
        const auto support =
            std::count_if(s.begin(), s.end(), [](double v) { return v > kSupportTol; });
        return std::log2(static_cast<double>(support));
      }
      double acc = 0.0;
      for (double v : s)
        if (v > 0.0) acc += std::pow(v, alpha);
      return std::log2(acc) / (1.0 - alpha);
    }
    case FunctionalKind::Tail: {
      double acc = 0.0;
      for (std::size_t j = s.size(); j-- > f.m();) acc += s[j];
      return acc;
    }
  }
  return 0.0;
}

double evaluate(const Functional &f, const ProbVector &p) { return evaluate(f, p.values()); }

double evaluate_spectral(const Functional &f, const DensityMatrix &rho) {
  RealVector ev = hermitian_eigenvalues(rho.matrix());
  for (auto &v : ev) v = std::max(0.0, v);
  return evaluate(f, ev);
}

}  // namespace qcoh
