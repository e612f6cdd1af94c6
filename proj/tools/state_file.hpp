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
#include <string_view>

#include "json.hpp"
#include "qcoh/qstate.hpp"

namespace qcoh::cli {

// State file: {"kind": "pure"|"density", "dim": d | "dims": [dB, dA],
//              "data": [[re, im], ...]}
// Matrices are row-major (flat, or nested by row). Bipartite amplitudes use
// |jk> = j*dA + k with j on B.
struct LoadedState {
  std::string kind;
  std::optional<BipartiteDims> dims;
  std::optional<PureState> pure;
  DensityMatrix density;

  std::size_t dim() const noexcept { return density.dim(); }
  std::optional<BipartitePureState> bipartite_pure() const;
};

LoadedState parse_state(const nlohmann::json &j, const Tolerances &tol = {});
/// Reads and parses; the raw bytes are returned through `raw` for digesting.
LoadedState load_state_file(const std::string &path, const Tolerances &tol, std::string &raw);

nlohmann::json state_to_json(std::string_view kind, const std::vector<std::size_t> &dims,
                             std::span<const Complex> data);
nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const ComplexMatrix &m);

}  // namespace qcoh::cli
