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
#include <vector>

#include "kgadget/gadget.hpp"
#include "kgadget/linalg.hpp"

namespace kgadget {

/// Orthonormal basis of a simultaneous eigenspace of the register parities
/// X_s^{(x)k}. Each register pairs a bitstring b having ancilla 0 unset with
/// its complement as (|b> + sign_s |~b>)/sqrt2; sign_s = +1 for every
/// register gives the +1 sector the gadget analysis lives in.
///
/// Sector index layout, most significant first: the n computational bits,
/// then the k-1 free ancilla bits of register 0, register 1, ... .
class SectorBasis {
 public:
  SectorBasis(GadgetLayout layout, std::vector<int> signs);

  const GadgetLayout& layout() const noexcept { return layout_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  std::size_t sector_dim() const noexcept { return sector_dim_; }

  /// Full-space support of column `col`: 2^r basis indices and amplitudes.
  const std::vector<std::size_t>& support(std::size_t col) const { return support_[col]; }
  const std::vector<double>& amplitudes(std::size_t col) const { return amplitudes_[col]; }

  /// Dense full_dim x sector_dim isometry.
  CMatrix vectors() const;

  /// Sector columns whose registers all carry the 0...0 pairing, i.e. the cat
  /// states; there are 2^n of them, ordered by computational basis state.
  std::vector<std::size_t> ground_columns() const;

  /// Sector column of (computational state, all registers in |+>).
  std::size_t ground_column(std::size_t comp_state) const;

 private:
  GadgetLayout layout_;
  std::vector<int> signs_;
  std::size_t sector_dim_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::vector<double>> amplitudes_;
};

SectorBasis build_sector_basis(const GadgetLayout& layout, std::size_t max_qubits = 14);

/// Basis of the sector with the given per-register parity signs (each +-1).
SectorBasis build_sector_basis(const GadgetLayout& layout, const std::vector<int>& signs,
                               std::size_t max_qubits = 14);

/// Largest |[M, X_s^{(x)k}]| entry over registers, computed without forming
/// the parity matrices.
double max_parity_commutator(const CMatrix& m, const GadgetLayout& layout);

/// B^dagger M B. Throws SymmetryViolation unless M commutes with every
/// register parity to within tol * max(1, max |M_ij|).
CMatrix project_to_sector(const CMatrix& m, const SectorBasis& basis, double tol = 1e-10);

struct CatProjector {
  CMatrix matrix;  // full space
  std::size_t rank;
};

/// I_comp (x) (x)_s |+><+|_s on the full space.
CatProjector cat_projector(const GadgetLayout& layout, std::size_t max_qubits = 14);

/// The same projector expressed in the +1 sector basis: diagonal, ones on
/// the ground columns.
CMatrix ground_projector(const SectorBasis& basis);

}  // namespace kgadget
