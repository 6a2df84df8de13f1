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

#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include <Eigen/Dense>

namespace kgadget {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Absolute floor applied to every scale-relative tolerance.
inline constexpr double kToleranceFloor = 1e-14;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;  // column i pairs with eigenvalues[i]
};

double max_abs_entry(const CMatrix& m);

/// True when max |M_ij - conj(M_ji)| <= rel_tol * max(1, max |M_ij|).
bool is_hermitian(const CMatrix& m, double rel_tol = 1e-12);

/// Throws NonSquare or NonHermitian.
void require_hermitian(const CMatrix& m, double rel_tol = 1e-12);

Spectrum hermitian_eigendecompose(const CMatrix& m);

/// Largest |eigenvalue| of a Hermitian matrix.
double operator_norm(const CMatrix& m);

/// Largest singular value; the operator 2-norm for matrices that need not be
/// Hermitian (the Bloch operators beyond leading order).
double spectral_norm(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Qubit ordering: in a register of N qubits, qubit q is bit (N - 1 - q) of the
// basis index, so qubit 0 is the most significant bit. Every embedding in the
// library goes through these helpers.

inline std::size_t qubit_mask(std::size_t qubit, std::size_t total_qubits) {
  return std::size_t{1} << (total_qubits - 1 - qubit);
}

inline int qubit_bit(std::size_t index, std::size_t qubit, std::size_t total_qubits) {
  return (index & qubit_mask(qubit, total_qubits)) ? 1 : 0;
}

CMatrix embed_single_qubit(const CMatrix& op, std::size_t qubit, std::size_t total_qubits);

/// Tensor product of 2x2 operators on distinct qubits, identity elsewhere.
/// Built entry by entry, so cost is O(2^N * 2^factors) rather than a dense
/// product of embeddings.
CMatrix embed_product(std::span<const std::pair<std::size_t, CMatrix>> factors,
                      std::size_t total_qubits);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace kgadget
