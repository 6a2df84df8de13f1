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
#include <span>
#include <vector>

#include "kgadget/gadget.hpp"
#include "kgadget/linalg.hpp"
#include "kgadget/sector.hpp"

namespace kgadget {

// Bloch's degenerate perturbation expansion for H = H0 + lambda V, where H0 is
// diagonal with a zero-energy ground space. Every per-order operator is kept
// lambda-free: the physical term of order m is lambda^m times the stored
// matrix.

enum class TupleKind { A, U };

using ExponentTuple = std::vector<int>;

/// Exponent tuples entering order m, sorted lexicographically.
///   U-type: length m, sum m, prefix sums l_1 + ... + l_p >= p for p < m.
///   A-type: length m-1, sum m-1, prefix sums >= p for p <= m-2.
/// m = 0 yields an empty list.
std::vector<ExponentTuple> enumerate_tuples(TupleKind kind, int m);

struct BlochConfig {
  int max_order = 6;
  std::size_t max_dim = std::size_t{1} << 12;
};

/// Unperturbed diagonal H0 (ground energy 0) and perturbation V in a common
/// basis. Ground states are the diagonal entries with |E| <= 1e-9.
class BlochProblem {
 public:
  /// Throws NonDiagonal, NoZeroGroundEnergy, NonSquare or NonHermitian.
  BlochProblem(const CMatrix& h0, CMatrix v);

  const RVector& energies() const noexcept { return energies_; }
  const CMatrix& v() const noexcept { return v_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(energies_.size()); }
  const std::vector<std::size_t>& ground() const noexcept { return ground_; }

  /// Smallest nonzero unperturbed energy.
  double gap() const noexcept { return gap_; }

  CMatrix ground_projector() const;

  /// Diagonal of S^l: -P0 for l = 0, sum_{E != 0} P_E / (-E)^l otherwise.
  RVector resolvent_diagonal(int l) const;

 private:
  RVector energies_;
  CMatrix v_;
  std::vector<std::size_t> ground_;
  double gap_;
};

/// The gadget restricted to the +1 sector: H_anc is diagonal there and its
/// zero-energy states are exactly the cat-state columns.
BlochProblem bloch_problem(const GadgetSystem& system, const SectorBasis& basis);

/// S^l as a matrix. Throws NonDiagonal or NoZeroGroundEnergy.
CMatrix spectral_resolvent(const CMatrix& h0, int l);

/// Closed-form sum over A-type tuples of P0 V S^l1 V ... S^l(m-1) V P0.
CMatrix compute_A_order(const BlochProblem& problem, int m, const BlochConfig& config = {});

/// Closed-form sum over U-type tuples of S^l1 V S^l2 V ... S^lm V P0;
/// m = 0 gives P0.
CMatrix compute_U_order(const BlochProblem& problem, int m, const BlochConfig& config = {});

/// U^(m) from the order recurrence
///   U^(m) = S^1 [ V U^(m-1) - sum_{p=1}^{m-1} U^(p) V U^(m-p-1) ],
/// U^(0) = P0, which never enumerates tuples.
CMatrix compute_U_recurrence(const BlochProblem& problem, int m, const BlochConfig& config = {});

/// One operator chain P0 V S^l1 V ... V P0 (A-type) with explicit V factors,
/// used to isolate single diagrams.
CMatrix evaluate_chain(const BlochProblem& problem, std::span<const CMatrix> couplings,
                       std::span<const int> exponents);

struct ShiftSplit {
  std::vector<double> shift_poly;        // index m, entry 0 is the constant term
  std::vector<CMatrix> effective_parts;  // index m - 1
};

/// Splits each A^(m), m = 1..a_terms.size(), into alpha_m P0 plus a remainder,
/// alpha_m = tr(A^(m) P0) / rank P0. Remainders below order k must vanish
/// (relative tolerance tol) or SubleadingNotScalar is thrown.
ShiftSplit split_shift(std::span<const CMatrix> a_terms, const CMatrix& p0, std::size_t k,
                       double tol = 1e-10);

struct ConvergenceCertificate {
  double gap;
  double v_norm;
  double threshold;      // gap / 4
  double lambda_v_norm;  // ||lambda V||
  bool converges;
  double geometric_ratio;  // 4 ||lambda V|| / gap
};

ConvergenceCertificate convergence_certificate(const GadgetSystem& system);

struct BlochSeries {
  int k_order;  // highest order computed
  std::vector<CMatrix> a_terms;  // A^(1) .. A^(order)
  std::vector<CMatrix> u_terms;  // U^(1) .. U^(order)
  std::vector<double> shift_poly;
  std::vector<CMatrix> effective_parts;  // orders 1..k_order
  CMatrix p0;
  ConvergenceCertificate certificate;

  /// f(lambda) = sum_m shift_poly[m] lambda^m.
  double shift(double lambda) const;

  /// Non-shift component at order m (1 <= m <= k_order).
  const CMatrix& effective_part(int m) const { return effective_parts.at(static_cast<std::size_t>(m - 1)); }

  /// sum_{m <= order} lambda^m A^(m).
  CMatrix a_sum(double lambda, int order) const;

  /// P0 + sum_{m <= order} lambda^m U^(m).
  CMatrix u_sum(double lambda, int order) const;
};

/// Per-order operators through `order` (default: the gadget's k) in the +1
/// sector, the shift split through k and the certificate at system.lambda.
BlochSeries compute_bloch_series(const GadgetSystem& system, const SectorBasis& basis,
                                 int order = 0, const BlochConfig& config = {});

}  // namespace kgadget
