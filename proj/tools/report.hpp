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
#include <vector>

#include "json.hpp"

namespace qcoh::cli {

inline constexpr int kSchemaVersion = 1;

// Tabular results (family sweeps) live in results as
// {"columns": [...], "rows": [[...], ...]} and become CSV rows directly.
struct Report {
  std::string command;
  std::vector<std::string> args;  // command line after the program name
  std::string input_digest;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
  std::string timestamp;

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json &j);
};

/// "fnv1a64:" followed by 16 hex digits.
std::string fnv1a64(std::string_view bytes);
std::string utc_timestamp();

enum class Format { Json, Csv };

struct OutputTarget {
  Format format = Format::Json;
  std::optional<std::string> path;  // stdout when empty
};

/// "json" and "csv" select stdout; anything else is a path whose extension
/// (.csv, otherwise JSON) picks the format.
OutputTarget parse_out(std::string_view out);

std::string render_json(const Report &r);
/// Table rows when results carry one, otherwise "key,value" lines with
/// dotted keys.
std::string render_csv(const Report &r);

}  // namespace qcoh::cli
