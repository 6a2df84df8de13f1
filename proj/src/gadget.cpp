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

#include "kgadget/gadget.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "kgadget/error.hpp"

namespace kgadget {

GadgetLayout::GadgetLayout(std::size_t n_comp, std::size_t r, std::size_t k)
    : n_comp_(n_comp), r_(r), k_(k) {
  if (k_ < 2) throw Error(ErrorCode::SchemaError, "register size k must be at least 2");
  if (r_ < 1) throw Error(ErrorCode::SchemaError, "at least one register is required");
  if (total_qubits() >= 8 * sizeof(std::size_t) - 1) {
    throw Error(ErrorCode::DimensionOverflow, "layout does not fit a basis index");
  }
}

std::size_t GadgetLayout::ancilla_index(std::size_t s, std::size_t j) const {
  if (s >= r_ || j >= k_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "ancilla (" + std::to_string(s) + ", " + std::to_string(j) + ")");
  }
  return n_comp_ + s * k_ + j;
}

std::size_t GadgetLayout::register_mask(std::size_t s) const {
  std::size_t mask = 0;
  for (std::size_t j = 0; j < k_; ++j) mask |= qubit_mask(ancilla_index(s, j), total_qubits());
  return mask;
}

void check_qubit_cap(std::size_t total_qubits, std::size_t max_qubits) {
  if (total_qubits > max_qubits) {
    throw Error(ErrorCode::DimensionOverflow, std::to_string(total_qubits) +
                                                  " qubits exceed the cap of " +
                                                  std::to_string(max_qubits));
  }
}

double penalty_of_state(const GadgetLayout& layout, std::size_t basis_index) {
  double total = 0.0;
  const auto k = static_cast<double>(layout.k());
  for (std::size_t s = 0; s < layout.r(); ++s) {
    const auto w = static_cast<double>(std::popcount(basis_index & layout.register_mask(s)));
    total += w * (k - w);
  }
  return total;
}

CMatrix build_penalty(const GadgetLayout& layout, std::size_t max_qubits) {
  check_qubit_cap(layout.total_qubits(), max_qubits);
  const std::size_t dim = layout.full_dim();
  const std::size_t nq = layout.total_qubits();
  RVector diag = RVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < layout.r(); ++s) {
    for (std::size_t i = 0; i < layout.k(); ++i) {
      for (std::size_t j = i + 1; j < layout.k(); ++j) {
        const std::size_t qi = layout.ancilla_index(s, i);
        const std::size_t qj = layout.ancilla_index(s, j);
        for (std::size_t b = 0; b < dim; ++b) {
          // (1 - z_i z_j) / 2 is 1 exactly when the two bits differ.
          if (qubit_bit(b, qi, nq) != qubit_bit(b, qj, nq)) diag(static_cast<Eigen::Index>(b)) += 1.0;
        }
      }
    }
  }
  return diag.cast<Complex>().asDiagonal();
}

CMatrix build_coupling(const KLocalHamiltonian& h, const GadgetLayout& layout,
                       std::size_t max_qubits) {
  check_qubit_cap(layout.total_qubits(), max_qubits);
  const std::size_t nq = layout.total_qubits();
  CMatrix v = CMatrix::Zero(layout.full_dim(), layout.full_dim());
  for (std::size_t s = 0; s < h.r(); ++s) {
    const auto& term = h.terms()[s];
    for (std::size_t j = 0; j < h.k(); ++j) {
      const double c = j == 0 ? term.coeff : 1.0;
      if (c == 0.0) continue;
      const std::pair<std::size_t, CMatrix> factors[] = {
          {term.factors[j].qubit, axis_matrix(term.factors[j].op)},
          {layout.ancilla_index(s, j), pauli::x()}};
      v += c * embed_product(factors, nq);
    }
  }
  return v;
}

double lambda_bound(const KLocalHamiltonian& h, const CMatrix& v) {
  return lambda_bound_from_norm(h, operator_norm(v));
}

double lambda_bound_from_norm(const KLocalHamiltonian& h, double norm) {
  const auto gap = static_cast<double>(h.k() - 1);
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  return gap / (4.0 * norm);
}

double loose_coupling_norm_bound(const KLocalHamiltonian& h) {
  double total = 0.0;
  for (const auto& term : h.terms()) total += std::abs(term.coeff) + static_cast<double>(h.k() - 1);
  return total;
}

CMatrix register_parity(const GadgetLayout& layout, std::size_t s) {
  std::vector<std::pair<std::size_t, CMatrix>> factors;
  for (std::size_t j = 0; j < layout.k(); ++j) factors.emplace_back(layout.ancilla_index(s, j), pauli::x());
  return embed_product(factors, layout.total_qubits());
}

namespace {

void apply_lambda(GadgetSystem& system, double lambda, bool strict) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidLambda, "lambda must be positive and finite");
  }
  system.lambda = lambda;
  system.warnings.clear();
  if (lambda >= system.lambda_bound) {
    std::ostringstream msg;
    msg << "lambda " << lambda << " is not below the convergence bound " << system.lambda_bound;
    if (strict) throw Error(ErrorCode::LambdaTooLarge, msg.str());
    system.warnings.push_back(msg.str());
  }
}

}  // namespace

GadgetSystem assemble(const KLocalHamiltonian& h, double lambda, bool strict, std::size_t max_qubits) {
  GadgetLayout layout(h);
  check_qubit_cap(layout.total_qubits(), max_qubits);
  CMatrix h_anc = build_penalty(layout, max_qubits);
  CMatrix v = build_coupling(h, layout, max_qubits);
  const double norm = operator_norm(v);
  const double bound = lambda_bound_from_norm(h, norm);
  GadgetSystem system{layout, std::move(h_anc), std::move(v), 0.0, norm, bound, h, {}};
  apply_lambda(system, lambda, strict);
  return system;
}

GadgetSystem with_lambda(const GadgetSystem& system, double lambda, bool strict) {
  GadgetSystem out = system;
  apply_lambda(out, lambda, strict);
  return out;
}

}  // namespace kgadget
