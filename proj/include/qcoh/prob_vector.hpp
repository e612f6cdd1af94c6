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
#include <span>
#include <vector>

namespace qcoh {

/// Nonnegative real vector summing to one. Carries coherence vectors and
/// Schmidt vectors. Entries keep the order they were given in.
class ProbVector {
 public:
  static constexpr double kNegativeTol = 1e-12;
  static constexpr double kSumTol = 1e-9;

  ProbVector() = default;
  /// Validates; throws ValidationError("probability") on failure.
  explicit ProbVector(std::vector<double> entries);

  /// Wraps values that are a probability vector by construction.
  static ProbVector unchecked(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Entries in non-increasing order, zero-padded up to `length` if longer.
  std::vector<double> sorted_desc(std::size_t length = 0) const;

  /// Number of entries strictly above `threshold`.
  std::size_t support_size(double threshold = 0.0) const;

  double sum() const;

 private:
  struct UncheckedTag {};
  ProbVector(std::vector<double> entries, UncheckedTag)
      : entries_(std::move(entries)) {}

  std::vector<double> entries_;
};

}  // namespace qcoh
