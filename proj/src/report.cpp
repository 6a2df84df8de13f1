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

#include "kgadget/report.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "kgadget/error.hpp"
#include "kgadget/gadget.hpp"
#include "kgadget/sector.hpp"
#include "kgadget/serialize.hpp"

namespace kgadget {

std::vector<double> geometric_range(double start, double factor, int count) {
  if (!(start > 0.0) || !(factor > 0.0) || count < 1) {
    throw Error(ErrorCode::UsageError, "lambda range needs start > 0, factor > 0, count >= 1");
  }
  std::vector<double> out;
  double value = start;
  for (int i = 0; i < count; ++i) {
    out.push_back(value);
    value *= factor;
  }
  return out;
}

std::vector<double> parse_lambda_range(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorCode::UsageError, "lambda range must look like start:factor:count");
  }
  auto parse = [&](std::string_view part, auto& value) {
    const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw Error(ErrorCode::UsageError, "cannot parse '" + std::string(part) + "' in lambda range");
    }
  };
  double start = 0.0;
  double factor = 0.0;
  int count = 0;
  parse(spec.substr(0, first), start);
  parse(spec.substr(first + 1, second - first - 1), factor);
  parse(spec.substr(second + 1), count);
  return geometric_range(start, factor, count);
}

std::vector<SweepRow> run_sweep(const KLocalHamiltonian& h, std::vector<double> lambdas,
                                const SweepOptions& options) {
  if (lambdas.empty()) throw Error(ErrorCode::UsageError, "the lambda list is empty");
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidLambda, "every lambda must be positive");
  }
  std::sort(lambdas.begin(), lambdas.end());

  const GadgetSystem base = assemble(h, lambdas.front(), false, options.max_qubits);
  const SectorBasis basis = build_sector_basis(base.layout, options.max_qubits);
  const SectorGadget gadget = project_gadget(base, basis);
  std::optional<BlochSeries> series;
  if (options.mode == ShiftMode::BlochPoly) series = compute_bloch_series(base, basis);

  std::vector<SweepRow> rows(lambdas.size());
  auto compute_row = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.lambda = lambdas[i];
    row.shift_mode = options.mode;
    row.sector_dim = basis.sector_dim();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (options.strict && row.lambda >= base.lambda_bound) {
        throw Error(ErrorCode::LambdaTooLarge, "lambda " + format_double(row.lambda) +
                                                   " is not below the bound " +
                                                   format_double(base.lambda_bound));
      }
      const EffectiveReport report =
          error_ratio(gadget, h, basis, row.lambda, options.mode, series ? &*series : nullptr);
      row.ratio = report.ratio;
      row.error_norm = report.error_norm;
      row.id_norm = report.id_norm;
      row.shift = report.shift_used;
    } catch (const Error& e) {
      row.error_code = std::string(error_code_name(e.code()));
      row.error_detail = e.detail();
    }
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(rows.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) compute_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) compute_row(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += format_double(row.lambda) + ',' + opt(row.ratio) + ',' + opt(row.error_norm) + ',' +
           opt(row.id_norm) + ',' + opt(row.shift) + ',' +
           csv_field(shift_mode_name(row.shift_mode)) + ',' + std::to_string(row.sector_dim) + ',' +
           format_double(row.wall_time_ms) + '\n';
  }
  return out;
}

std::string sweep_errors_json(const std::vector<SweepRow>& rows) {
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& row : rows) {
    if (row.ok()) continue;
    errors.push_back({{"lambda", row.lambda}, {"error", row.error_code}, {"detail", row.error_detail}});
  }
  return errors.dump(2) + "\n";
}

unsigned long long catalan_number(int n) {
  unsigned long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.required; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json doc;
  doc["lambda"] = lambda;
  doc["passed"] = passed();
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json entry{{"name", c.name},
                         {"measured", c.measured},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass},
                         {"required", c.required}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    doc["checks"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

namespace {

// Runs one measurement; an exception from the library becomes a failed check.
void run_check(std::vector<Check>& out, std::string name, double tolerance,
               const std::function<double()>& measure, bool at_most = true) {
  Check c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  try {
    c.measured = measure();
    c.pass = at_most ? c.measured <= tolerance : c.measured > tolerance;
  } catch (const Error& e) {
    c.pass = false;
    c.measured = std::nan("");
    c.detail = std::string(error_code_name(e.code())) + ": " + e.detail();
  }
  out.push_back(std::move(c));
}

}  // namespace

VerifyReport run_verify(const KLocalHamiltonian& h, double lambda, std::size_t max_qubits) {
  VerifyReport report;
  report.lambda = lambda;
  const GadgetSystem system = assemble(h, lambda, false, max_qubits);
  const SectorBasis basis = build_sector_basis(system.layout, max_qubits);
  const auto k = static_cast<int>(h.k());
  auto& checks = report.checks;

  run_check(checks, "parity_commutation", 1e-12,
            [&] { return max_parity_commutator(system.hamiltonian(), system.layout); });

  run_check(checks, "penalty_law", 0.0, [&] {
    double worst = 0.0;
    for (std::size_t b = 0; b < system.layout.full_dim(); ++b) {
      const auto i = static_cast<Eigen::Index>(b);
      worst = std::max(worst, std::abs(system.h_anc(i, i).real() - penalty_of_state(system.layout, b)));
    }
    return worst;
  });

  run_check(checks, "catalan_counts", 0.0, [&] {
    double worst = 0.0;
    for (int m = 1; m <= 8; ++m) {
      const auto count = static_cast<double>(enumerate_tuples(TupleKind::U, m).size());
      worst = std::max(worst, std::abs(count - static_cast<double>(catalan_number(m))));
    }
    return worst;
  });

  // Series failures (e.g. a non-scalar sub-leading order) surface through the
  // individual checks below.
  std::optional<BlochSeries> series;
  std::string series_error;
  try {
    series = compute_bloch_series(system, basis);
  } catch (const Error& e) {
    series_error = std::string(error_code_name(e.code())) + ": " + e.detail();
  }
  auto need_series = [&]() -> const BlochSeries& {
    if (!series) throw Error(ErrorCode::SubleadingNotScalar, series_error);
    return *series;
  };

  run_check(checks, "shift_purity", 1e-10, [&] {
    const auto& s = need_series();
    double worst = 0.0;
    for (int m = 1; m < k; ++m) worst = std::max(worst, spectral_norm(s.effective_part(m)));
    return worst;
  });

  run_check(checks, "kth_order_coefficient", 1e-10, [&] {
    const auto& s = need_series();
    const CMatrix expected = ideal_hamiltonian(h, 1.0, basis);
    return (s.effective_part(k) - expected).norm() / expected.norm();
  });

  run_check(checks, "recurrence_equality", 1e-12, [&] {
    const BlochProblem problem = bloch_problem(system, basis);
    double worst = 0.0;
    for (int m = 1; m <= 5; ++m) {
      worst = std::max(worst, max_abs_entry(compute_U_order(problem, m) - compute_U_recurrence(problem, m)));
    }
    return worst;
  });

  run_check(checks, "hermiticity_through_k", 1e-10, [&] {
    const CMatrix a = need_series().a_sum(lambda, k);
    return max_abs_entry(a - a.adjoint()) / std::max(1.0, max_abs_entry(a));
  });

  {
    const ConvergenceCertificate cert = convergence_certificate(system);
    Check c{"convergence_certified", cert.geometric_ratio, 1.0, cert.converges, false,
            cert.converges ? "certified: 4||lambda V||/gamma < 1"
                           : "not certified: the bound is sufficient, not necessary"};
    checks.push_back(std::move(c));
  }

  std::optional<EffectiveReport> observed;
  std::string observed_error;
  try {
    observed = error_ratio(system, basis, ShiftMode::MeanEnergy);
  } catch (const Error& e) {
    observed_error = std::string(error_code_name(e.code())) + ": " + e.detail();
  }
  auto need_observed = [&]() -> const EffectiveReport& {
    if (!observed) throw Error(ErrorCode::DegenerateCut, observed_error);
    return *observed;
  };

  run_check(checks, "observed_gap_at_cut", kCutGap,
            [&] { return need_observed().spectral_gap_at_cut; }, false);
  run_check(checks, "observed_error_ratio", 1.0, [&] { return need_observed().ratio; });
  // The two shifts agree through order k, so relative to ||H_id|| ~ lambda^k
  // they differ at O(lambda).
  run_check(checks, "shift_modes_agree", lambda, [&] {
    const auto& obs = need_observed();
    return std::abs(obs.shift_used - need_series().shift(lambda)) / obs.id_norm;
  });

  return report;
}

std::string bloch_series_json(const BlochSeries& series, double lambda) {
  std::string out = "{\"order\":" + std::to_string(series.k_order);
  out += ",\"lambda\":" + format_double(lambda);
  out += ",\"shift_poly\":" + doubles_to_json(series.shift_poly);
  out += ",\"shift\":" + format_double(series.shift(lambda));
  auto matrices = [&](const char* key, const std::vector<CMatrix>& ms) {
    out += ",\"" + std::string(key) + "\":[";
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i) out += ',';
      out += matrix_to_json(ms[i]);
    }
    out += ']';
  };
  matrices("a_terms", series.a_terms);
  matrices("effective_parts", series.effective_parts);
  const auto& c = series.certificate;
  out += ",\"certificate\":{\"gap\":" + format_double(c.gap) + ",\"v_norm\":" + format_double(c.v_norm) +
         ",\"threshold\":" + format_double(c.threshold) + ",\"lambda_v_norm\":" +
         format_double(c.lambda_v_norm) + ",\"converges\":" + (c.converges ? "true" : "false") +
         ",\"geometric_ratio\":" + format_double(c.geometric_ratio) + "}}\n";
  return out;
}

std::string diagrams_json(TupleKind kind, int m) {
  const auto tuples = enumerate_tuples(kind, m);
  std::string out = "{\"kind\":\"";
  out += kind == TupleKind::A ? "A" : "U";
  out += "\",\"order\":" + std::to_string(m) + ",\"count\":" + std::to_string(tuples.size()) + ",\"tuples\":[";
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < tuples[i].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(tuples[i][j]);
    }
    out += ']';
  }
  return out + "]}\n";
}

}  // namespace kgadget
