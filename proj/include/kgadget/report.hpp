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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgadget/bloch.hpp"
#include "kgadget/effective.hpp"
#include "kgadget/hamiltonian.hpp"

namespace kgadget {

/// One lambda of an error-ratio sweep. Failed rows keep lambda and carry the
/// error instead of the measured fields.
struct SweepRow {
  double lambda = 0.0;
  std::optional<double> ratio;
  std::optional<double> error_norm;
  std::optional<double> id_norm;
  std::optional<double> shift;
  ShiftMode shift_mode = ShiftMode::MeanEnergy;
  std::size_t sector_dim = 0;
  double wall_time_ms = 0.0;
  std::string error_code;
  std::string error_detail;

  bool ok() const { return ratio.has_value(); }
};

struct SweepOptions {
  ShiftMode mode = ShiftMode::MeanEnergy;
  unsigned jobs = 1;
  bool strict = false;
  std::size_t max_qubits = 12;
};

/// start, start*factor, ..., count values.
std::vector<double> geometric_range(double start, double factor, int count);

/// Parses "start:factor:count"; throws UsageError.
std::vector<double> parse_lambda_range(std::string_view spec);

/// Rows come back in ascending lambda order whatever the thread count; each
/// row is computed independently so results do not depend on `jobs`.
std::vector<SweepRow> run_sweep(const KLocalHamiltonian& h, std::vector<double> lambdas,
                                const SweepOptions& options);

inline constexpr std::string_view kSweepHeader =
    "lambda,ratio,error_norm,id_norm,shift,shift_mode,sector_dim,wall_time_ms";

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// JSON array of {lambda, error, detail} for the failed rows.
std::string sweep_errors_json(const std::vector<SweepRow>& rows);

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool required = true;
  std::string detail;
};

struct VerifyReport {
  double lambda = 0.0;
  std::vector<Check> checks;

  bool passed() const;
  std::string to_json() const;
};

/// Runs the structural, combinatorial, Bloch-series and exact-spectrum checks
/// for one Hamiltonian at one lambda.
VerifyReport run_verify(const KLocalHamiltonian& h, double lambda, std::size_t max_qubits = 12);

std::string bloch_series_json(const BlochSeries& series, double lambda);

std::string diagrams_json(TupleKind kind, int m);

/// n-th Catalan number, C(2n, n) / (n + 1).
unsigned long long catalan_number(int n);

}  // namespace kgadget
