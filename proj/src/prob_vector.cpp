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
#include "qcoh/prob_vector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

ProbVector::ProbVector(std::vector<double> entries) : entries_(std::move(entries)) {
  double total = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double v = entries_[i];
    if (!std::isfinite(v)) {
      throw ValidationError("probability",
                            "probability entry " + std::to_string(i) + " is not finite");
    }
    if (v < -kNegativeTol) {
      throw ValidationError("probability", "probability entry " + std::to_string(i) +
                                               " is negative: " + std::to_string(v));
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSumTol) {
    throw ValidationError("probability",
                          "probability vector sums to " + std::to_string(total));
  }
}

ProbVector ProbVector::unchecked(std::vector<double> entries) {
  return ProbVector(std::move(entries), UncheckedTag{});
}

std::vector<double> ProbVector::sorted_desc(std::size_t length) const {
  std::vector<double> out(entries_);
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  if (out.size() < length) out.resize(length, 0.0);
  return out;
}

std::size_t ProbVector::support_size(double threshold) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [&](double v) { return v > threshold; }));
}

double ProbVector::sum() const { return std::accumulate(entries_.begin(), entries_.end(), 0.0); }

}  // namespace qcoh
