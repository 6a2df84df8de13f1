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
#include <string>
#include <vector>

#include "kgadget/hamiltonian.hpp"
#include "kgadget/linalg.hpp"

namespace kgadget {

/// Qubit bookkeeping for a gadget: computational qubits first, then one
/// register of k ancillas per target term, registers in term order.
class GadgetLayout {
 public:
  GadgetLayout(std::size_t n_comp, std::size_t r, std::size_t k);
  explicit GadgetLayout(const KLocalHamiltonian& h) : GadgetLayout(h.n(), h.r(), h.k()) {}

  std::size_t n_comp() const noexcept { return n_comp_; }
  std::size_t r() const noexcept { return r_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t total_qubits() const noexcept { return n_comp_ + r_ * k_; }
  std::size_t full_dim() const noexcept { return std::size_t{1} << total_qubits(); }

  /// Global index of ancilla j (0-based) of register s.
  std::size_t ancilla_index(std::size_t s, std::size_t j) const;

  /// Basis-index mask covering all qubits of register s.
  std::size_t register_mask(std::size_t s) const;

  bool operator==(const GadgetLayout&) const = default;

 private:
  std::size_t n_comp_;
  std::size_t r_;
  std::size_t k_;
};

void check_qubit_cap(std::size_t total_qubits, std::size_t max_qubits);

/// H_anc = sum_s sum_{i<j} (I - Z_si Z_sj) / 2, diagonal.
CMatrix build_penalty(const GadgetLayout& layout, std::size_t max_qubits = 14);

/// Penalty of one basis state: sum over registers of w (k - w), w the
/// register's Hamming weight.
double penalty_of_state(const GadgetLayout& layout, std::size_t basis_index);

/// V = sum_s sum_j c_sj sigma_sj (x) X_sj with c_s1 = c_s and c_sj = 1 for j > 1.
CMatrix build_coupling(const KLocalHamiltonian& h, const GadgetLayout& layout,
                       std::size_t max_qubits = 14);

/// (k - 1) / (4 ||V||) with the exact operator norm.
double lambda_bound(const KLocalHamiltonian& h, const CMatrix& v);
double lambda_bound_from_norm(const KLocalHamiltonian& h, double v_norm);

/// sum_s (|c_s| + k - 1), a cheap upper bound on ||V||.
double loose_coupling_norm_bound(const KLocalHamiltonian& h);

/// X^{(x)k} on register s as a full-space matrix.
CMatrix register_parity(const GadgetLayout& layout, std::size_t s);

struct GadgetSystem {
  GadgetLayout layout;
  CMatrix h_anc;
  CMatrix v;  // unscaled
  double lambda;
  double v_norm;  // exact operator norm of v
  double lambda_bound;
  KLocalHamiltonian source;
  std::vector<std::string> warnings;

  CMatrix hamiltonian() const { return h_anc + lambda * v; }
};

/// Throws InvalidLambda for lambda <= 0, LambdaTooLarge when strict and
/// lambda >= lambda_bound, DimensionOverflow past the qubit cap. In
/// non-strict mode an oversize lambda is recorded in `warnings`.
GadgetSystem assemble(const KLocalHamiltonian& h, double lambda, bool strict,
                      std::size_t max_qubits = 14);

/// Same system at a different lambda; matrices are shared values.
GadgetSystem with_lambda(const GadgetSystem& system, double lambda, bool strict);

}  // namespace kgadget
