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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kgadget/linalg.hpp"

namespace kgadget {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Entries with magnitude at or below this are omitted from matrix exports.
inline constexpr double kExportThreshold = 1e-15;

/// {"dim": N, "entries": [[row, col, re, im], ...]} listing entries with
/// |value| > 1e-15 in row-major order.
std::string matrix_to_json(const CMatrix& m);

/// Inverse of matrix_to_json; throws SchemaError on malformed input.
CMatrix matrix_from_json(std::string_view text);

/// JSON array of shortest round-trip numbers.
std::string doubles_to_json(const std::vector<double>& values);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

}  // namespace kgadget
