// Copyright 2026 The kgadget Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgadget/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "kgadget/error.hpp"

namespace kgadget {

std::string format_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::SchemaError, "cannot serialize a non-finite value");
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string matrix_to_json(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "matrix export expects a square matrix");
  std::string out = "{\"dim\":" + std::to_string(m.rows()) + ",\"entries\":[";
  bool first = true;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (std::abs(z) <= kExportThreshold) continue;
      if (!first) out += ',';
      first = false;
      out += '[' + std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(z.real()) + ',' +
             format_double(z.imag()) + ']';
    }
  }
  out += "]}";
  return out;
}

CMatrix matrix_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed matrix JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries") ||
      !doc["dim"].is_number_integer() || !doc["entries"].is_array()) {
    throw Error(ErrorCode::SchemaError, "matrix JSON needs integer 'dim' and array 'entries'");
  }
  const auto dim = doc["dim"].get<long long>();
  if (dim < 0) throw Error(ErrorCode::SchemaError, "negative dimension");
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 4) throw Error(ErrorCode::SchemaError, "entry must be [row, col, re, im]");
    const auto row = e[0].get<long long>();
    const auto col = e[1].get<long long>();
    if (row < 0 || col < 0 || row >= dim || col >= dim) {
      throw Error(ErrorCode::SchemaError, "entry index out of range");
    }
    m(row, col) = Complex{e[2].get<double>(), e[3].get<double>()};
  }
  return m;
}

std::string doubles_to_json(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out + "]";
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace kgadget
