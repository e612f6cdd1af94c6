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

#include <stdexcept>
#include <string>

namespace qcoh {

/// Input failed a structural or numerical invariant check. `invariant` names
/// the failing check ("hermitian", "psd", "trace", "norm", "dims", ...).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string invariant, const std::string &message)
      : std::invalid_argument(message), invariant_(std::move(invariant)) {}

  const std::string &invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Raised when an operation requires x ≺ y and it does not hold.
class NotMajorizedError : public std::domain_error {
 public:
  explicit NotMajorizedError(const std::string &message)
      : std::domain_error(message) {}
};

/// An iterative solver ran out of budget. Carries the best bracket found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string &message, double lower, double upper)
      : std::runtime_error(message), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace qcoh
