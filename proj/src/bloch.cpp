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

#include "kgadget/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgadget/error.hpp"

namespace kgadget {

namespace {

constexpr double kZeroEnergy = 1e-9;

// Tuples of the given length summing to `length` whose prefix sums satisfy
// l_1 + ... + l_p >= p for every p < length. Both tuple kinds reduce to this.
void extend_tuples(int length, int position, int prefix, ExponentTuple& current,
                   std::vector<ExponentTuple>& out) {
  if (position == length) {
    if (prefix == length) out.push_back(current);
    return;
  }
  const int p = position + 1;
  const int lowest = std::max(0, (p < length ? p : length) - prefix);
  for (int l = lowest; prefix + l <= length; ++l) {
    current.push_back(l);
    extend_tuples(length, p, prefix + l, current, out);
    current.pop_back();
  }
}

void check_order(const BlochProblem& problem, int m, const BlochConfig& config) {
  if (m < 0) throw Error(ErrorCode::OrderTooHigh, "order must be nonnegative");
  if (m > config.max_order) {
    throw Error(ErrorCode::OrderTooHigh, "order " + std::to_string(m) + " exceeds the cap of " +
                                             std::to_string(config.max_order));
  }
  if (problem.dim() > config.max_dim) {
    throw Error(ErrorCode::OrderTooHigh, "dimension " + std::to_string(problem.dim()) +
                                             " exceeds the engine cap of " +
                                             std::to_string(config.max_dim));
  }
}

RVector diagonal_of(const CMatrix& h0) {
  if (h0.rows() != h0.cols()) throw Error(ErrorCode::NonSquare, "H0 must be square");
  const double scale = std::max(1.0, max_abs_entry(h0));
  CMatrix off = h0;
  off.diagonal().setZero();
  if (max_abs_entry(off) > std::max(1e-12 * scale, kToleranceFloor)) {
    throw Error(ErrorCode::NonDiagonal, "H0 must be diagonal");
  }
  if (h0.diagonal().imag().cwiseAbs().maxCoeff() > std::max(1e-12 * scale, kToleranceFloor)) {
    throw Error(ErrorCode::NonHermitian, "H0 has complex diagonal entries");
  }
  return h0.diagonal().real();
}

// Columns of V restricted to the ground states: the thin form of V P0.
CMatrix v_on_ground(const BlochProblem& problem) {
  const auto& g = problem.ground();
  CMatrix thin(problem.dim(), g.size());
  for (std::size_t c = 0; c < g.size(); ++c) thin.col(c) = problem.v().col(g[c]);
  return thin;
}

CMatrix ground_rows(const BlochProblem& problem, const CMatrix& thin) {
  const auto& g = problem.ground();
  CMatrix out = CMatrix::Zero(problem.dim(), problem.dim());
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) out(g[a], g[b]) = thin(g[a], b);
  }
  return out;
}

CMatrix scatter_columns(const BlochProblem& problem, const CMatrix& thin) {
  const auto& g = problem.ground();
  CMatrix out = CMatrix::Zero(problem.dim(), problem.dim());
  for (std::size_t c = 0; c < g.size(); ++c) out.col(g[c]) = thin.col(c);
  return out;
}

}  // namespace

std::vector<ExponentTuple> enumerate_tuples(TupleKind kind, int m) {
  std::vector<ExponentTuple> out;
  if (m <= 0) return out;
  const int length = kind == TupleKind::U ? m : m - 1;
  ExponentTuple current;
  current.reserve(static_cast<std::size_t>(length));
  extend_tuples(length, 0, 0, current, out);
  return out;
}

BlochProblem::BlochProblem(const CMatrix& h0, CMatrix v) : energies_(diagonal_of(h0)), v_(std::move(v)) {
  require_hermitian(v_);
  if (v_.rows() != h0.rows()) throw Error(ErrorCode::NonSquare, "H0 and V dimensions differ");
  gap_ = std::numeric_limits<double>::infinity();
  double lowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < energies_.size(); ++i) {
    const double e = energies_(i);
    lowest = std::min(lowest, e);
    if (std::abs(e) <= kZeroEnergy) {
      ground_.push_back(static_cast<std::size_t>(i));
    } else {
      gap_ = std::min(gap_, e);
    }
  }
  if (ground_.empty() || lowest < -kZeroEnergy) {
    throw Error(ErrorCode::NoZeroGroundEnergy, "H0 must have ground energy 0");
  }
}

CMatrix BlochProblem::ground_projector() const {
  CMatrix p = CMatrix::Zero(dim(), dim());
  for (std::size_t g : ground_) p(g, g) = 1.0;
  return p;
}

RVector BlochProblem::resolvent_diagonal(int l) const {
  RVector s(energies_.size());
  for (Eigen::Index i = 0; i < energies_.size(); ++i) {
    const double e = energies_(i);
    const bool ground = std::abs(e) <= kZeroEnergy;
    if (l == 0) {
      s(i) = ground ? -1.0 : 0.0;
    } else {
      s(i) = ground ? 0.0 : std::pow(-e, -l);
    }
  }
  return s;
}

BlochProblem bloch_problem(const GadgetSystem& system, const SectorBasis& basis) {
  return BlochProblem(project_to_sector(system.h_anc, basis), project_to_sector(system.v, basis));
}

CMatrix spectral_resolvent(const CMatrix& h0, int l) {
  if (l < 0) throw Error(ErrorCode::OrderTooHigh, "resolvent power must be nonnegative");
  const BlochProblem problem(h0, CMatrix::Zero(h0.rows(), h0.cols()));
  return problem.resolvent_diagonal(l).cast<Complex>().asDiagonal();
}

CMatrix compute_A_order(const BlochProblem& problem, int m, const BlochConfig& config) {
  check_order(problem, m, config);
  if (m == 0) return CMatrix::Zero(problem.dim(), problem.dim());
  const CMatrix start = v_on_ground(problem);
  std::vector<RVector> resolvents;
  for (int l = 0; l < m; ++l) resolvents.push_back(problem.resolvent_diagonal(l));

  CMatrix total = CMatrix::Zero(problem.dim(), start.cols());
  for (const auto& tuple : enumerate_tuples(TupleKind::A, m)) {
    CMatrix chain = start;
    for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) {
      chain = resolvents[static_cast<std::size_t>(*it)].asDiagonal() * chain;
      chain = problem.v() * chain;
    }
    total += chain;
  }
  return ground_rows(problem, total);
}

CMatrix compute_U_order(const BlochProblem& problem, int m, const BlochConfig& config) {
  check_order(problem, m, config);
  if (m == 0) return problem.ground_projector();
  const CMatrix start = v_on_ground(problem);
  std::vector<RVector> resolvents;
  for (int l = 0; l <= m; ++l) resolvents.push_back(problem.resolvent_diagonal(l));

  CMatrix total = CMatrix::Zero(problem.dim(), start.cols());
  for (const auto& tuple : enumerate_tuples(TupleKind::U, m)) {
    CMatrix chain = resolvents[static_cast<std::size_t>(tuple.back())].asDiagonal() * start;
    for (std::size_t i = tuple.size() - 1; i-- > 0;) {
      chain = problem.v() * chain;
      chain = resolvents[static_cast<std::size_t>(tuple[i])].asDiagonal() * chain;
    }
    total += chain;
  }
  return scatter_columns(problem, total);
}

CMatrix compute_U_recurrence(const BlochProblem& problem, int m, const BlochConfig& config) {
  check_order(problem, m, config);
  const RVector s1 = problem.resolvent_diagonal(1);
  std::vector<CMatrix> u;
  u.push_back(problem.ground_projector());
  for (int order = 1; order <= m; ++order) {
    CMatrix bracket = problem.v() * u[static_cast<std::size_t>(order - 1)];
    for (int p = 1; p <= order - 1; ++p) {
      bracket -= u[static_cast<std::size_t>(p)] * problem.v() *
                 u[static_cast<std::size_t>(order - p - 1)];
    }
    u.push_back(s1.asDiagonal() * bracket);
  }
  return u[static_cast<std::size_t>(m)];
}

CMatrix evaluate_chain(const BlochProblem& problem, std::span<const CMatrix> couplings,
                       std::span<const int> exponents) {
  if (couplings.empty() || exponents.size() + 1 != couplings.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "a chain of m couplings needs m - 1 exponents");
  }
  const CMatrix p0 = problem.ground_projector();
  CMatrix chain = couplings.back() * p0;
  for (std::size_t i = exponents.size(); i-- > 0;) {
    chain = problem.resolvent_diagonal(exponents[i]).asDiagonal() * chain;
    chain = couplings[i] * chain;
  }
  return p0 * chain;
}

ShiftSplit split_shift(std::span<const CMatrix> a_terms, const CMatrix& p0, std::size_t k,
                       double tol) {
  const double rank = p0.trace().real();
  if (!(rank > 0.5)) throw Error(ErrorCode::SupportViolation, "ground projector has rank 0");
  ShiftSplit split;
  split.shift_poly.push_back(0.0);
  for (std::size_t i = 0; i < a_terms.size(); ++i) {
    const std::size_t m = i + 1;
    const CMatrix& a = a_terms[i];
    const double scale = std::max(1.0, max_abs_entry(a));
    if (max_abs_entry(p0 * a * p0 - a) > std::max(1e-12 * scale, kToleranceFloor)) {
      throw Error(ErrorCode::SupportViolation,
                  "order " + std::to_string(m) + " operator leaves the ground space");
    }
    const double alpha = (a * p0).trace().real() / rank;
    CMatrix remainder = a - alpha * p0;
    if (m < k) {
      const double norm = spectral_norm(remainder);
      if (norm > std::max(tol * std::max(1.0, spectral_norm(a)), kToleranceFloor)) {
        throw Error(ErrorCode::SubleadingNotScalar,
                    "order " + std::to_string(m) + " remainder norm " + std::to_string(norm));
      }
    }
    split.shift_poly.push_back(alpha);
    split.effective_parts.push_back(std::move(remainder));
  }
  return split;
}

ConvergenceCertificate convergence_certificate(const GadgetSystem& system) {
  const RVector diag = system.h_anc.diagonal().real();
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag(i) > kZeroEnergy) gap = std::min(gap, diag(i));
  }
  ConvergenceCertificate cert{};
  cert.gap = gap;
  cert.v_norm = system.v_norm;
  cert.threshold = gap / 4.0;
  cert.lambda_v_norm = system.lambda * system.v_norm;
  cert.converges = cert.lambda_v_norm < cert.threshold;
  cert.geometric_ratio = 4.0 * cert.lambda_v_norm / gap;
  return cert;
}

double BlochSeries::shift(double lambda) const {
  double value = 0.0;
  double power = 1.0;
  for (double coeff : shift_poly) {
    value += coeff * power;
    power *= lambda;
  }
  return value;
}

CMatrix BlochSeries::a_sum(double lambda, int order) const {
  CMatrix total = CMatrix::Zero(p0.rows(), p0.cols());
  const int top = std::min<int>(order, static_cast<int>(a_terms.size()));
  for (int m = 1; m <= top; ++m) total += std::pow(lambda, m) * a_terms[static_cast<std::size_t>(m - 1)];
  return total;
}

CMatrix BlochSeries::u_sum(double lambda, int order) const {
  CMatrix total = p0;
  const int top = std::min<int>(order, static_cast<int>(u_terms.size()));
  for (int m = 1; m <= top; ++m) total += std::pow(lambda, m) * u_terms[static_cast<std::size_t>(m - 1)];
  return total;
}

BlochSeries compute_bloch_series(const GadgetSystem& system, const SectorBasis& basis, int order,
                                 const BlochConfig& config) {
  const auto k = static_cast<int>(system.layout.k());
  if (order <= 0) order = k;
  const BlochProblem problem = bloch_problem(system, basis);
  check_order(problem, order, config);

  BlochSeries series;
  series.k_order = order;
  for (int m = 1; m <= order; ++m) {
    series.a_terms.push_back(compute_A_order(problem, m, config));
    series.u_terms.push_back(compute_U_order(problem, m, config));
  }
  series.p0 = problem.ground_projector();
  ShiftSplit split = split_shift(series.a_terms, series.p0, system.layout.k());
  series.shift_poly = std::move(split.shift_poly);
  series.effective_parts = std::move(split.effective_parts);
  series.certificate = convergence_certificate(system);
  return series;
}

}  // namespace kgadget
