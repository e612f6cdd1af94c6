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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcoh/qstate.hpp"

namespace qcoh {

struct SelftestOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 200;  // per suite; the roof and robustness suites scale it down
  bool quick = false;        // smaller dimensions, a tenth of the trials
};

/// An input that broke an invariant, in state-file shape.
struct Counterexample {
  std::string kind;                // "pure" or "density"
  std::vector<std::size_t> dims;   // {d} or {d_B, d_A}
  ComplexVector data;              // amplitudes, or the matrix row-major
  std::string note;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // min over trials of (tolerance − error); negative on failure
  std::optional<Counterexample> counterexample;  // first failure
  // Validation suite only: fixture name and the invariant it raised.
  std::vector<std::pair<std::string, std::string>> raised;

  bool passed() const noexcept { return failures == 0; }
};

struct SelftestReport {
  std::vector<SuiteResult> suites;

  bool passed() const noexcept;
  std::size_t total_trials() const noexcept;
  std::size_t total_failures() const noexcept;
};

SelftestReport run_selftest(const SelftestOptions &opts = {});

}  // namespace qcoh
