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
#include "report.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>

#include "qcoh/errors.hpp"

namespace qcoh::cli {

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = {{"name", command}, {"args", args}};
  j["input_digest"] = input_digest;
  j["results"] = results;
  j["diagnostics"] = diagnostics;
  j["timestamp"] = timestamp;
  return j;
}

Report Report::from_json(const nlohmann::json &j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw ValidationError("format", "unsupported report schema version");
  Report r;
  r.command = j.at("command").at("name").get<std::string>();
  r.args = j.at("command").at("args").get<std::vector<std::string>>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.results = j.at("results");
  r.diagnostics = j.at("diagnostics");
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OutputTarget parse_out(std::string_view out) {
  if (out.empty() || out == "json") return {Format::Json, std::nullopt};
  if (out == "csv") return {Format::Csv, std::nullopt};
  const bool csv = out.size() >= 4 && out.substr(out.size() - 4) == ".csv";
  return {csv ? Format::Csv : Format::Json, std::string(out)};
}

std::string render_json(const Report &r) { return r.to_json().dump(2) + "\n"; }

namespace {

std::string csv_cell(const nlohmann::json &v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const nlohmann::json &v, const std::string &key, std::string &out) {
  if (v.is_object() && !v.empty()) {
    for (const auto &[k, child] : v.items()) flatten(child, key.empty() ? k : key + "." + k, out);
  } else if (v.is_array() && !v.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], key + "." + std::to_string(i), out);
  } else {
    out += csv_cell(key) + "," + csv_cell(v) + "\n";
  }
}

}  // namespace

std::string render_csv(const Report &r) {
  std::string out;
  const auto &res = r.results;
  if (res.contains("columns") && res.contains("rows")) {
    const auto &cols = res["columns"];
    for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "," : "") + csv_cell(cols[c]);
    out += "\n";
    for (const auto &row : res["rows"]) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_cell(row[c]);
      out += "\n";
    }
    return out;
  }
  out = "key,value\n";
  flatten(res, "", out);
  return out;
}

}  // namespace qcoh::cli
