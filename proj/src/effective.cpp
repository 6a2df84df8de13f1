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

#include "kgadget/effective.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kgadget/error.hpp"

namespace kgadget {

namespace {

// Places a computational-space operator on the cat-state columns: op (x) P_+.
CMatrix on_ground_columns(const CMatrix& op, const SectorBasis& basis) {
  const auto cols = basis.ground_columns();
  CMatrix out = CMatrix::Zero(basis.sector_dim(), basis.sector_dim());
  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) out(cols[a], cols[b]) = op(a, b);
  }
  return out;
}

}  // namespace

EffectiveSpectrum effective_hamiltonian(const CMatrix& h, std::size_t d) {
  const auto dim = static_cast<std::size_t>(h.rows());
  if (d == 0 || d > dim) {
    throw Error(ErrorCode::IndexOutOfRange,
                "retained dimension " + std::to_string(d) + " outside [1, " + std::to_string(dim) + "]");
  }
  const Spectrum spec = hermitian_eigendecompose(h);
  const auto di = static_cast<Eigen::Index>(d);
  double gap = std::numeric_limits<double>::infinity();
  if (d < dim) {
    gap = spec.eigenvalues(di) - spec.eigenvalues(di - 1);
    if (!(gap > kCutGap)) {
      throw Error(ErrorCode::DegenerateCut, "gap at the cut is " + std::to_string(gap));
    }
  }
  const auto low = spec.eigenvectors.leftCols(di);
  const RVector energies = spec.eigenvalues.head(di);
  EffectiveSpectrum out;
  out.projector = low * low.adjoint();
  out.h_eff = low * energies.cast<Complex>().asDiagonal() * low.adjoint();
  out.energies = energies;
  out.gap_at_cut = gap;
  return out;
}

std::string_view shift_mode_name(ShiftMode mode) {
  return mode == ShiftMode::MeanEnergy ? "mean" : "bloch";
}

ShiftMode parse_shift_mode(std::string_view name) {
  if (name == "mean" || name == "mean-energy") return ShiftMode::MeanEnergy;
  if (name == "bloch" || name == "bloch-poly") return ShiftMode::BlochPoly;
  throw Error(ErrorCode::UsageError, "unknown shift mode '" + std::string(name) + "'");
}

ShiftedEffective shifted_effective(const CMatrix& h, std::size_t d, ShiftMode mode,
                                   const BlochSeries* bloch, double lambda) {
  if (mode == ShiftMode::BlochPoly && bloch == nullptr) {
    throw Error(ErrorCode::MissingBlochSeries, "bloch-poly shift needs a Bloch series");
  }
  ShiftedEffective out{effective_hamiltonian(h, d), 0.0, mode, {}};
  out.shift = mode == ShiftMode::MeanEnergy ? out.spectrum.energies.mean() : bloch->shift(lambda);
  out.h_eff_shifted = out.spectrum.h_eff - out.shift * out.spectrum.projector;
  return out;
}

double ideal_prefactor(std::size_t k, double lambda) {
  const auto kd = static_cast<double>(k);
  return -kd * std::pow(-lambda, kd) / std::tgamma(kd);
}

CMatrix ideal_hamiltonian(const KLocalHamiltonian& h, double lambda, const SectorBasis& basis) {
  return ideal_prefactor(h.k(), lambda) * on_ground_columns(comp_matrix(h), basis);
}

CMatrix ideal_hamiltonian_full(const KLocalHamiltonian& h, double lambda, const GadgetLayout& layout) {
  const CatProjector cat = cat_projector(layout);
  // cat.matrix already carries the identity on the computational qubits, so
  // H_comp (x) P_+ = (H_comp (x) I_anc) * cat.
  const std::size_t anc_dim = layout.full_dim() >> layout.n_comp();
  const CMatrix comp_full = kron(comp_matrix(h), CMatrix::Identity(anc_dim, anc_dim));
  return ideal_prefactor(h.k(), lambda) * comp_full * cat.matrix;
}

SectorGadget project_gadget(const GadgetSystem& system, const SectorBasis& basis) {
  return SectorGadget{project_to_sector(system.h_anc, basis), project_to_sector(system.v, basis),
                      comp_matrix(system.source)};
}

EffectiveReport error_ratio(const SectorGadget& gadget, const KLocalHamiltonian& h,
                            const SectorBasis& basis, double lambda, ShiftMode mode,
                            const BlochSeries* bloch) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidLambda, "lambda must be positive and finite");
  }
  const std::size_t d = std::size_t{1} << h.n();
  const ShiftedEffective eff = shifted_effective(gadget.hamiltonian(lambda), d, mode, bloch, lambda);

  CMatrix h_id = ideal_prefactor(h.k(), lambda) * on_ground_columns(gadget.comp, basis);

  EffectiveReport report;
  report.lambda = lambda;
  report.d = d;
  report.sector_dim = basis.sector_dim();
  report.shift_used = eff.shift;
  report.shift_mode = mode;
  report.energies = eff.spectrum.energies;
  report.spectral_gap_at_cut = eff.spectrum.gap_at_cut;
  report.id_norm = operator_norm(h_id);
  if (!(report.id_norm > 0.0)) {
    throw Error(ErrorCode::UndefinedRatio, "ideal Hamiltonian vanishes; the error ratio is undefined");
  }
  const CMatrix diff = h_id - eff.h_eff_shifted;
  report.error_norm = operator_norm(0.5 * (diff + diff.adjoint()));
  report.ratio = report.error_norm / report.id_norm;
  report.h_eff_shifted = eff.h_eff_shifted;
  report.h_id = std::move(h_id);
  return report;
}

EffectiveReport error_ratio(const GadgetSystem& system, const SectorBasis& basis, ShiftMode mode,
                            const BlochSeries* bloch) {
  return error_ratio(project_gadget(system, basis), system.source, basis, system.lambda, mode, bloch);
}

}  // namespace kgadget
