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

#include "kgadget/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kgadget/error.hpp"

namespace kgadget {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DuplicateQubitInTerm: return "DuplicateQubitInTerm";
    case ErrorCode::NonUnitAxis: return "NonUnitAxis";
    case ErrorCode::LocalityMismatch: return "LocalityMismatch";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::LambdaTooLarge: return "LambdaTooLarge";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NonDiagonal: return "NonDiagonal";
    case ErrorCode::NoZeroGroundEnergy: return "NoZeroGroundEnergy";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::SubleadingNotScalar: return "SubleadingNotScalar";
    case ErrorCode::DegenerateCut: return "DegenerateCut";
    case ErrorCode::MissingBlochSeries: return "MissingBlochSeries";
    case ErrorCode::UndefinedRatio: return "UndefinedRatio";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

double max_abs_entry(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, max_abs_entry(m));
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return dev <= std::max(rel_tol * scale, kToleranceFloor);
}

void require_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!is_hermitian(m, rel_tol)) {
    throw Error(ErrorCode::NonHermitian, "matrix fails the Hermiticity check");
  }
}

Spectrum hermitian_eigendecompose(const CMatrix& m) {
  require_hermitian(m);
  // Symmetrize so round-off in the lower triangle cannot leak into the solve.
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double operator_norm(const CMatrix& m) {
  require_hermitian(m);
  if (m.size() == 0) return 0.0;
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const RVector& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix embed_single_qubit(const CMatrix& op, std::size_t qubit, std::size_t total_qubits) {
  const std::pair<std::size_t, CMatrix> factor{qubit, op};
  return embed_product(std::span(&factor, 1), total_qubits);
}

CMatrix embed_product(std::span<const std::pair<std::size_t, CMatrix>> factors,
                      std::size_t total_qubits) {
  std::vector<std::size_t> masks;
  std::size_t support = 0;
  for (const auto& [qubit, op] : factors) {
    if (qubit >= total_qubits) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "qubit " + std::to_string(qubit) + " of " + std::to_string(total_qubits));
    }
    if (op.rows() != 2 || op.cols() != 2) {
      throw Error(ErrorCode::NonSquare, "single-qubit factor must be 2x2");
    }
    const std::size_t mask = qubit_mask(qubit, total_qubits);
    if (support & mask) {
      throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " repeated");
    }
    support |= mask;
    masks.push_back(mask);
  }

  const std::size_t dim = std::size_t{1} << total_qubits;
  const std::size_t combos = std::size_t{1} << factors.size();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t rest = col & ~support;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t row = rest;
      Complex value{1.0, 0.0};
      for (std::size_t f = 0; f < factors.size(); ++f) {
        const int out_bit = static_cast<int>((c >> f) & 1U);
        const int in_bit = (col & masks[f]) ? 1 : 0;
        value *= factors[f].second(out_bit, in_bit);
        if (out_bit) row |= masks[f];
      }
      if (value != Complex{0.0, 0.0}) out(static_cast<Eigen::Index>(row),
                                          static_cast<Eigen::Index>(col)) = value;
    }
  }
  return out;
}

namespace pauli {

CMatrix identity() { return CMatrix::Identity(2, 2); }

CMatrix x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix y() {
  CMatrix m(2, 2);
  m << Complex{0.0, 0.0}, Complex{0.0, -1.0}, Complex{0.0, 1.0}, Complex{0.0, 0.0};
  return m;
}

CMatrix z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace kgadget
