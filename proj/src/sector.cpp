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

#include "kgadget/sector.hpp"

#include <algorithm>
#include <cmath>

#include "kgadget/error.hpp"

namespace kgadget {

SectorBasis::SectorBasis(GadgetLayout layout, std::vector<int> signs)
    : layout_(layout), signs_(std::move(signs)) {
  if (signs_.size() != layout_.r()) {
    throw Error(ErrorCode::IndexOutOfRange, "one parity sign per register is required");
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error(ErrorCode::IndexOutOfRange, "parity signs must be +1 or -1");
  }

  const std::size_t n = layout_.n_comp();
  const std::size_t k = layout_.k();
  const std::size_t r = layout_.r();
  const std::size_t nq = layout_.total_qubits();
  const std::size_t free_bits = n + r * (k - 1);
  sector_dim_ = std::size_t{1} << free_bits;

  std::vector<std::size_t> masks(r);
  for (std::size_t s = 0; s < r; ++s) masks[s] = layout_.register_mask(s);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(r));

  support_.resize(sector_dim_);
  amplitudes_.resize(sector_dim_);
  for (std::size_t col = 0; col < sector_dim_; ++col) {
    // Scatter the free bits into a representative whose ancilla 0 in every
    // register is 0 (the lexicographically smaller member of each pair).
    std::size_t rep = 0;
    std::size_t bit = free_bits;
    for (std::size_t q = 0; q < n; ++q) {
      --bit;
      if ((col >> bit) & 1U) rep |= qubit_mask(q, nq);
    }
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t j = 1; j < k; ++j) {
        --bit;
        if ((col >> bit) & 1U) rep |= qubit_mask(layout_.ancilla_index(s, j), nq);
      }
    }

    const std::size_t combos = std::size_t{1} << r;
    support_[col].reserve(combos);
    amplitudes_[col].reserve(combos);
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t idx = rep;
      double a = amp;
      for (std::size_t s = 0; s < r; ++s) {
        if ((c >> s) & 1U) {
          idx ^= masks[s];
          a *= signs_[s];
        }
      }
      support_[col].push_back(idx);
      amplitudes_[col].push_back(a);
    }
  }
}

CMatrix SectorBasis::vectors() const {
  CMatrix b = CMatrix::Zero(layout_.full_dim(), sector_dim_);
  for (std::size_t col = 0; col < sector_dim_; ++col) {
    for (std::size_t i = 0; i < support_[col].size(); ++i) {
      b(support_[col][i], col) = amplitudes_[col][i];
    }
  }
  return b;
}

std::size_t SectorBasis::ground_column(std::size_t comp_state) const {
  const std::size_t anc_bits = layout_.r() * (layout_.k() - 1);
  return comp_state << anc_bits;
}

std::vector<std::size_t> SectorBasis::ground_columns() const {
  std::vector<std::size_t> cols;
  const std::size_t comp_dim = std::size_t{1} << layout_.n_comp();
  cols.reserve(comp_dim);
  for (std::size_t c = 0; c < comp_dim; ++c) cols.push_back(ground_column(c));
  return cols;
}

SectorBasis build_sector_basis(const GadgetLayout& layout, std::size_t max_qubits) {
  return build_sector_basis(layout, std::vector<int>(layout.r(), 1), max_qubits);
}

SectorBasis build_sector_basis(const GadgetLayout& layout, const std::vector<int>& signs,
                               std::size_t max_qubits) {
  check_qubit_cap(layout.total_qubits(), max_qubits);
  return SectorBasis(layout, signs);
}

double max_parity_commutator(const CMatrix& m, const GadgetLayout& layout) {
  if (static_cast<std::size_t>(m.rows()) != layout.full_dim() || m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "operator does not match the layout's full space");
  }
  double worst = 0.0;
  const auto dim = static_cast<std::size_t>(m.rows());
  for (std::size_t s = 0; s < layout.r(); ++s) {
    const std::size_t mask = layout.register_mask(s);
    // X M X has entries M[i^mask, j^mask]; [M, X] = 0 iff M equals it.
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t i = 0; i < dim; ++i) {
        worst = std::max(worst, std::abs(m(i, j) - m(i ^ mask, j ^ mask)));
      }
    }
  }
  return worst;
}

CMatrix project_to_sector(const CMatrix& m, const SectorBasis& basis, double tol) {
  const double dev = max_parity_commutator(m, basis.layout());
  if (dev > std::max(tol * std::max(1.0, max_abs_entry(m)), kToleranceFloor)) {
    throw Error(ErrorCode::SymmetryViolation,
                "operator fails to commute with a register parity (deviation " +
                    std::to_string(dev) + ")");
  }
  const std::size_t d = basis.sector_dim();
  CMatrix out(d, d);
  for (std::size_t b = 0; b < d; ++b) {
    const auto& sb = basis.support(b);
    const auto& ab = basis.amplitudes(b);
    for (std::size_t a = 0; a < d; ++a) {
      const auto& sa = basis.support(a);
      const auto& aa = basis.amplitudes(a);
      Complex acc{0.0, 0.0};
      for (std::size_t i = 0; i < sa.size(); ++i) {
        for (std::size_t j = 0; j < sb.size(); ++j) acc += aa[i] * ab[j] * m(sa[i], sb[j]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

CatProjector cat_projector(const GadgetLayout& layout, std::size_t max_qubits) {
  check_qubit_cap(layout.total_qubits(), max_qubits);
  const SectorBasis basis(layout, std::vector<int>(layout.r(), 1));
  const std::size_t full = layout.full_dim();
  CMatrix p = CMatrix::Zero(full, full);
  for (std::size_t col : basis.ground_columns()) {
    const auto& sup = basis.support(col);
    const auto& amp = basis.amplitudes(col);
    for (std::size_t i = 0; i < sup.size(); ++i) {
      for (std::size_t j = 0; j < sup.size(); ++j) p(sup[i], sup[j]) += amp[i] * amp[j];
    }
  }
  return CatProjector{std::move(p), std::size_t{1} << layout.n_comp()};
}

CMatrix ground_projector(const SectorBasis& basis) {
  CMatrix p = CMatrix::Zero(basis.sector_dim(), basis.sector_dim());
  for (std::size_t col : basis.ground_columns()) p(col, col) = 1.0;
  return p;
}

}  // namespace kgadget
