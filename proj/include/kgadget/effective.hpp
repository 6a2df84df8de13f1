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
#include <string_view>

#include "kgadget/bloch.hpp"
#include "kgadget/gadget.hpp"
#include "kgadget/hamiltonian.hpp"
#include "kgadget/linalg.hpp"
#include "kgadget/sector.hpp"

namespace kgadget {

/// Spectral truncation of H onto its d lowest eigenstates.
struct EffectiveSpectrum {
  CMatrix h_eff;       // sum_{j<d} E_j |psi_j><psi_j|
  CMatrix projector;   // sum_{j<d} |psi_j><psi_j|
  RVector energies;    // the d lowest eigenvalues, ascending
  double gap_at_cut;   // E_{d+1} - E_d, +inf when d = dim
};

/// Minimum separation required between E_d and E_{d+1}.
inline constexpr double kCutGap = 1e-9;

/// Throws DegenerateCut when the cut falls inside a degenerate level.
EffectiveSpectrum effective_hamiltonian(const CMatrix& h, std::size_t d);

enum class ShiftMode { MeanEnergy, BlochPoly };

std::string_view shift_mode_name(ShiftMode mode);
ShiftMode parse_shift_mode(std::string_view name);

struct ShiftedEffective {
  EffectiveSpectrum spectrum;
  double shift;
  ShiftMode mode;
  CMatrix h_eff_shifted;  // h_eff - shift * projector
};

/// Mean-energy mode uses the mean of the retained energies; bloch-poly mode
/// evaluates the series shift polynomial at `lambda` (MissingBlochSeries
/// without one).
ShiftedEffective shifted_effective(const CMatrix& h, std::size_t d, ShiftMode mode,
                                   const BlochSeries* bloch = nullptr, double lambda = 0.0);

/// -k (-lambda)^k / (k-1)!
double ideal_prefactor(std::size_t k, double lambda);

/// prefactor * H_comp (x) P_+ in the +1 sector basis.
CMatrix ideal_hamiltonian(const KLocalHamiltonian& h, double lambda, const SectorBasis& basis);

/// The same operator on the full space, for cross-checks on small layouts.
CMatrix ideal_hamiltonian_full(const KLocalHamiltonian& h, double lambda, const GadgetLayout& layout);

struct EffectiveReport {
  double lambda;
  std::size_t d;
  std::size_t sector_dim;
  double shift_used;
  ShiftMode shift_mode;
  CMatrix h_eff_shifted;
  CMatrix h_id;
  RVector energies;
  double error_norm;
  double id_norm;
  double ratio;
  double spectral_gap_at_cut;
};

/// Sector-projected pieces of a gadget, reusable across a lambda sweep.
struct SectorGadget {
  CMatrix h_anc;
  CMatrix v;
  CMatrix comp;  // H_comp on the computational qubits

  CMatrix hamiltonian(double lambda) const { return h_anc + lambda * v; }
};

SectorGadget project_gadget(const GadgetSystem& system, const SectorBasis& basis);

/// || H_id - H~_eff || / || H_id || from exact diagonalization of H_gad_+,
/// d = 2^n. Throws UndefinedRatio when H_id vanishes.
EffectiveReport error_ratio(const GadgetSystem& system, const SectorBasis& basis, ShiftMode mode,
                            const BlochSeries* bloch = nullptr);

EffectiveReport error_ratio(const SectorGadget& gadget, const KLocalHamiltonian& h,
                            const SectorBasis& basis, double lambda, ShiftMode mode,
                            const BlochSeries* bloch = nullptr);

}  // namespace kgadget
