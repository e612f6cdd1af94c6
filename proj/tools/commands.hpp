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

#include <cstdint>
#include <string>

#include "json.hpp"
#include "report.hpp"

namespace qcoh::cli {

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tol = 1e-9;         // state validation
  double solver_tol = 1e-6;  // robustness gap
  std::size_t restarts = 32;
  unsigned threads = 0;      // 0: hardware concurrency
};

struct RoofFlags {
  std::size_t ensemble_size = 0;
  std::size_t max_iters = 500;
  double sweep_tol = 1e-9;
};

struct MeasureArgs {
  std::string file;
  std::string f = "shannon";
  std::string kind = "coherence";
  bool robustness = false;
  RoofFlags roof;
};

struct TransformArgs {
  std::string source;
  std::string target;
  bool synthesize = false;
  bool prob = false;
};

struct CertifyArgs {
  std::string file;
  std::string measure;  // c_gc | e_gc; empty picks e_gc for square bipartite files
  bool roof = false;
  double meet_tol = 1e-3;
  RoofFlags roof_flags;
};

struct FamilyArgs {
  std::string family;
  std::size_t d = 3;
  std::string sweep;  // "lo:hi:steps", "lo:hi" (11 steps) or a single value
  bool roof = false;
};

struct SelftestArgs {
  std::size_t trials = 200;
  bool quick = false;
  std::vector<std::string> fixtures;  // state files expected to fail validation
};

struct CommandResult {
  Report report;
  int exit_code = 0;
  nlohmann::json error;  // set with a nonzero exit code
};

CommandResult cmd_measure(const MeasureArgs &a, const GlobalOptions &g);
CommandResult cmd_transform(const TransformArgs &a, const GlobalOptions &g);
CommandResult cmd_certify(const CertifyArgs &a, const GlobalOptions &g);
CommandResult cmd_family(const FamilyArgs &a, const GlobalOptions &g);
CommandResult cmd_selftest(const SelftestArgs &a, const GlobalOptions &g);

}  // namespace qcoh::cli
