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
#include "state_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcoh/errors.hpp"

namespace qcoh::cli {

namespace {

[[noreturn]] void bad_format(const std::string &msg) { throw ValidationError("format", msg); }

Complex parse_complex(const nlohmann::json &e, std::size_t index) {
  if (!e.is_array() || e.size() != 2)
    bad_format("data entry " + std::to_string(index) + " is not an [re, im] pair");
  for (const auto &part : e) {
    if (part.is_string()) {
      const auto s = part.get<std::string>();
      if (s == "NaN" || s == "nan" || s == "Infinity" || s == "-Infinity" || s == "inf" ||
          s == "-inf")
        throw ValidationError("finite", "data entry " + std::to_string(index) + " is " + s);
    }
    if (!part.is_number())
      bad_format("data entry " + std::to_string(index) + " has a non-numeric part");
  }
  const Complex z(e[0].get<double>(), e[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ValidationError("finite", "data entry " + std::to_string(index) + " is not finite");
  return z;
}

ComplexVector parse_data(const nlohmann::json &data) {
  if (!data.is_array()) bad_format("'data' must be an array");
  ComplexVector out;
  // Nested rows [[[re, im], ...], ...] are flattened row by row.
  const bool nested = !data.empty() && data[0].is_array() && !data[0].empty() &&
                      data[0][0].is_array();
  if (nested) {
    for (const auto &row : data) {
      if (!row.is_array()) bad_format("matrix rows must be arrays");
      for (const auto &e : row) out.push_back(parse_complex(e, out.size()));
    }
  } else {
    for (const auto &e : data) out.push_back(parse_complex(e, out.size()));
  }
  return out;
}

std::size_t positive_size(const nlohmann::json &v, const char *what) {
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
    bad_format(std::string(what) + " must be a positive integer");
  return v.get<std::size_t>();
}

}  // namespace

std::optional<BipartitePureState> LoadedState::bipartite_pure() const {
  if (!pure || !dims) return std::nullopt;
  return BipartitePureState(*dims, *pure);
}

LoadedState parse_state(const nlohmann::json &j, const Tolerances &tol) {
  if (!j.is_object()) bad_format("state file must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) bad_format("missing string field 'kind'");
  LoadedState out;
  out.kind = j["kind"].get<std::string>();
  if (out.kind != "pure" && out.kind != "density")
    bad_format("'kind' must be \"pure\" or \"density\"");

  std::size_t dim = 0;
  if (j.contains("dims")) {
    const auto &d = j["dims"];
    if (!d.is_array() || d.size() != 2) bad_format("'dims' must be [dB, dA]");
    out.dims = BipartiteDims{positive_size(d[0], "dims[0]"), positive_size(d[1], "dims[1]")};
    dim = out.dims->total();
    if (j.contains("dim") && positive_size(j["dim"], "dim") != dim)
      throw ValidationError("dims", "'dim' disagrees with the product of 'dims'");
  } else if (j.contains("dim")) {
    dim = positive_size(j["dim"], "dim");
  } else {
    bad_format("missing 'dim' or 'dims'");
  }
  if (!j.contains("data")) bad_format("missing 'data'");
  ComplexVector data = parse_data(j["data"]);

  if (out.kind == "pure") {
    if (data.size() != dim)
      throw ValidationError("dims", "expected " + std::to_string(dim) + " amplitudes, got " +
                                        std::to_string(data.size()));
    out.pure = PureState(std::move(data), tol);
    out.density = DensityMatrix::from_pure(*out.pure);
  } else {
    if (data.size() != dim * dim)
      throw ValidationError("dims", "expected " + std::to_string(dim * dim) +
                                        " matrix entries, got " + std::to_string(data.size()));
    out.density = DensityMatrix(ComplexMatrix(dim, dim, std::move(data)), tol);
  }
  return out;
}

LoadedState load_state_file(const std::string &path, const Tolerances &tol, std::string &raw) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("file", "cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  raw = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::out_of_range &e) {
    throw ValidationError("finite", "'" + path + "' holds a number out of double range: " +
                                        e.what());
  } catch (const nlohmann::json::exception &e) {
    bad_format("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_state(j, tol);
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json state_to_json(std::string_view kind, const std::vector<std::size_t> &dims,
                             std::span<const Complex> data) {
  nlohmann::json j;
  j["kind"] = kind;
  if (dims.size() == 2)
    j["dims"] = dims;
  else if (dims.size() == 1)
    j["dim"] = dims[0];
  auto &arr = j["data"] = nlohmann::json::array();
  for (Complex z : data) arr.push_back(complex_to_json(z));
  return j;
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qcoh::cli
