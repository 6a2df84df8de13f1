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

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgadget/linalg.hpp"

namespace kgadget {

/// Single-qubit operator n.sigma for a unit axis n.
class AxisOperator {
 public:
  /// Throws NonUnitAxis when | |axis| - 1 | > 1e-9.
  explicit AxisOperator(std::array<double, 3> axis);

  static AxisOperator x() { return AxisOperator({1.0, 0.0, 0.0}); }
  static AxisOperator y() { return AxisOperator({0.0, 1.0, 0.0}); }
  static AxisOperator z() { return AxisOperator({0.0, 0.0, 1.0}); }

  const std::array<double, 3>& axis() const noexcept { return axis_; }

  bool operator==(const AxisOperator&) const = default;

 private:
  std::array<double, 3> axis_;
};

CMatrix axis_matrix(const AxisOperator& op);

struct Factor {
  std::size_t qubit;
  AxisOperator op;

  bool operator==(const Factor&) const = default;
};

struct LocalTerm {
  double coeff;
  std::vector<Factor> factors;

  bool operator==(const LocalTerm&) const = default;
};

/// Target Hamiltonian: a real-weighted sum of k-fold products of axis
/// operators on distinct qubits. Every term carries exactly k factors.
class KLocalHamiltonian {
 public:
  /// Validates the invariants; throws SchemaError, DuplicateQubitInTerm or
  /// LocalityMismatch.
  KLocalHamiltonian(std::size_t n, std::size_t k, std::vector<LocalTerm> terms);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t r() const noexcept { return terms_.size(); }
  const std::vector<LocalTerm>& terms() const noexcept { return terms_; }

  bool operator==(const KLocalHamiltonian&) const = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<LocalTerm> terms_;
};

KLocalHamiltonian parse_hamiltonian(std::string_view document);
KLocalHamiltonian hamiltonian_from_json(const nlohmann::json& document);
KLocalHamiltonian load_hamiltonian(const std::string& path);

/// Canonical document form; axes are always written as 3-vectors.
nlohmann::json to_json(const KLocalHamiltonian& h);

/// Matrix of a single term (coefficient excluded) on `total_qubits` qubits.
CMatrix term_matrix(const LocalTerm& term, std::size_t total_qubits);

/// sum_s c_s H_s on the n computational qubits.
CMatrix comp_matrix(const KLocalHamiltonian& h, std::size_t max_qubits = 14);

}  // namespace kgadget
