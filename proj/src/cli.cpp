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

#include "kgadget/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgadget/bloch.hpp"
#include "kgadget/effective.hpp"
#include "kgadget/error.hpp"
#include "kgadget/gadget.hpp"
#include "kgadget/report.hpp"
#include "kgadget/sector.hpp"
#include "kgadget/serialize.hpp"

namespace kgadget {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct Options {
  std::string input;
  std::vector<double> lambdas;
  std::string lambda_range;
  std::string shift_mode = "mean";
  bool strict = false;
  unsigned jobs = 1;
  std::string out;
  std::size_t max_qubits = 12;
  int order = 0;
  int max_order = 12;
  std::string kind = "U";
};

void write_error(std::ostream& err, std::string_view code, const std::string& detail) {
  err << nlohmann::json{{"error", code}, {"detail", detail}}.dump() << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

// Writes to --out when given, otherwise to stdout.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
  } else {
    write_text(opt.out, text);
  }
}

KLocalHamiltonian input_hamiltonian(const Options& opt) {
  if (opt.input.empty()) throw Error(ErrorCode::UsageError, "--input is required");
  return load_hamiltonian(opt.input);
}

double single_lambda(const Options& opt) {
  if (opt.lambdas.size() != 1 || !opt.lambda_range.empty()) {
    throw Error(ErrorCode::UsageError, "this command takes exactly one --lambda");
  }
  return opt.lambdas.front();
}

int cmd_build(const Options& opt, std::ostream& out) {
  const auto h = input_hamiltonian(opt);
  const GadgetSystem system = assemble(h, single_lambda(opt), opt.strict, opt.max_qubits);
  if (opt.out.empty()) throw Error(ErrorCode::UsageError, "build needs --out DIRECTORY");
  std::filesystem::create_directories(opt.out);
  const std::filesystem::path dir(opt.out);
  write_text((dir / "h_anc.json").string(), matrix_to_json(system.h_anc) + "\n");
  write_text((dir / "v.json").string(), matrix_to_json(system.v) + "\n");

  nlohmann::json registers = nlohmann::json::array();
  for (std::size_t s = 0; s < system.layout.r(); ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < system.layout.k(); ++j) row.push_back(system.layout.ancilla_index(s, j));
    registers.push_back(std::move(row));
  }
  const nlohmann::json meta{{"n_comp", system.layout.n_comp()},
                            {"r", system.layout.r()},
                            {"k", system.layout.k()},
                            {"total_qubits", system.layout.total_qubits()},
                            {"ancilla_registers", registers},
                            {"lambda", system.lambda},
                            {"lambda_bound", system.lambda_bound},
                            {"v_norm", system.v_norm},
                            {"v_norm_loose_bound", loose_coupling_norm_bound(h)},
                            {"warnings", system.warnings}};
  write_text((dir / "metadata.json").string(), meta.dump(2) + "\n");
  out << meta.dump(2) << '\n';
  return kExitOk;
}

int cmd_spectrum(const Options& opt, std::ostream& out) {
  const auto h = input_hamiltonian(opt);
  const GadgetSystem system = assemble(h, single_lambda(opt), opt.strict, opt.max_qubits);
  const SectorBasis basis = build_sector_basis(system.layout, opt.max_qubits);
  const Spectrum spec = hermitian_eigendecompose(project_to_sector(system.hamiltonian(), basis));
  std::string csv = "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    csv += std::to_string(i) + ',' + format_double(spec.eigenvalues(i)) + '\n';
  }
  emit(opt, out, csv);
  return kExitOk;
}

int cmd_effective(const Options& opt, std::ostream& out) {
  const auto h = input_hamiltonian(opt);
  const GadgetSystem system = assemble(h, single_lambda(opt), opt.strict, opt.max_qubits);
  const SectorBasis basis = build_sector_basis(system.layout, opt.max_qubits);
  const ShiftMode mode = parse_shift_mode(opt.shift_mode);
  std::optional<BlochSeries> series;
  if (mode == ShiftMode::BlochPoly) series = compute_bloch_series(system, basis);
  const EffectiveReport r = error_ratio(system, basis, mode, series ? &*series : nullptr);

  std::vector<double> energies(r.energies.data(), r.energies.data() + r.energies.size());
  std::string text = "{\"lambda\":" + format_double(r.lambda) + ",\"d\":" + std::to_string(r.d) +
                     ",\"sector_dim\":" + std::to_string(r.sector_dim) + ",\"shift_mode\":\"" +
                     std::string(shift_mode_name(r.shift_mode)) + "\",\"shift\":" +
                     format_double(r.shift_used) + ",\"error_norm\":" + format_double(r.error_norm) +
                     ",\"id_norm\":" + format_double(r.id_norm) + ",\"ratio\":" + format_double(r.ratio) +
                     ",\"spectral_gap_at_cut\":" + format_double(r.spectral_gap_at_cut) +
                     ",\"energies\":" + doubles_to_json(energies) +
                     ",\"h_eff_shifted\":" + matrix_to_json(r.h_eff_shifted) +
                     ",\"h_id\":" + matrix_to_json(r.h_id) + "}\n";
  emit(opt, out, text);
  return kExitOk;
}

int cmd_bloch(const Options& opt, std::ostream& out) {
  const auto h = input_hamiltonian(opt);
  const GadgetSystem system = assemble(h, single_lambda(opt), opt.strict, opt.max_qubits);
  const SectorBasis basis = build_sector_basis(system.layout, opt.max_qubits);
  const BlochSeries series = compute_bloch_series(system, basis, opt.order);
  emit(opt, out, bloch_series_json(series, system.lambda));
  return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto h = input_hamiltonian(opt);
  std::vector<double> lambdas = opt.lambdas;
  if (!opt.lambda_range.empty()) {
    const auto range = parse_lambda_range(opt.lambda_range);
    lambdas.insert(lambdas.end(), range.begin(), range.end());
  }
  SweepOptions sweep;
  sweep.mode = parse_shift_mode(opt.shift_mode);
  sweep.jobs = opt.jobs;
  sweep.strict = opt.strict;
  sweep.max_qubits = opt.max_qubits;
  const auto rows = run_sweep(h, lambdas, sweep);
  emit(opt, out, sweep_csv(rows));

  const auto failed = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); });
  if (failed > 0) {
    const std::string errors = sweep_errors_json(rows);
    if (opt.out.empty()) {
      err << errors;
    } else {
      write_text(opt.out + ".errors.json", errors);
    }
  }
  return failed == static_cast<long>(rows.size()) ? kExitCheckFailed : kExitOk;
}

int cmd_diagrams(const Options& opt, std::ostream& out) {
  if (opt.order > opt.max_order) {
    throw Error(ErrorCode::OrderTooHigh, "order " + std::to_string(opt.order) + " exceeds the cap of " +
                                             std::to_string(opt.max_order));
  }
  if (opt.order < 0) throw Error(ErrorCode::UsageError, "--order must be nonnegative");
  TupleKind kind;
  if (opt.kind == "U" || opt.kind == "u") {
    kind = TupleKind::U;
  } else if (opt.kind == "A" || opt.kind == "a") {
    kind = TupleKind::A;
  } else {
    throw Error(ErrorCode::UsageError, "--kind must be A or U");
  }
  emit(opt, out, diagrams_json(kind, opt.order));
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto h = input_hamiltonian(opt);
  const VerifyReport report = run_verify(h, single_lambda(opt), opt.max_qubits);
  emit(opt, out, report.to_json());
  return report.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile k-local qubit Hamiltonians into 2-local gadgets and check them."};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--input", opt.input, "Hamiltonian JSON document");
  app.add_option("--lambda", opt.lambdas, "Perturbation strength (comma-separated list for sweep)")
      ->delimiter(',');
  app.add_option("--lambda-range", opt.lambda_range, "Geometric range start:factor:count");
  app.add_option("--shift-mode", opt.shift_mode, "Energy shift: mean or bloch")
      ->check(CLI::IsMember({"mean", "bloch"}));
  app.add_flag("--strict", opt.strict, "Reject lambda at or above the convergence bound");
  app.add_option("--jobs", opt.jobs, "Worker threads for sweep")->check(CLI::Range(1U, 256U));
  app.add_option("--out", opt.out, "Output path (directory for build)");
  app.add_option("--max-qubits", opt.max_qubits, "Cap on total qubits")->check(CLI::Range(1, 20));
  app.fallthrough();

  auto* build = app.add_subcommand("build", "Assemble H_anc and V and write them as matrix JSON");
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the +1-sector gadget Hamiltonian as CSV");
  auto* effective = app.add_subcommand("effective", "Exact shifted effective Hamiltonian and error ratio");
  auto* bloch = app.add_subcommand("bloch", "Per-order Bloch operators and the shift polynomial");
  bloch->add_option("--order", opt.order, "Highest order (default: k)");
  auto* sweep = app.add_subcommand("sweep", "Error ratio over a list of lambdas as CSV");
  auto* diagrams = app.add_subcommand("diagrams", "List the exponent tuples of one order");
  diagrams->add_option("--kind", opt.kind, "A or U");
  diagrams->add_option("--order", opt.order, "Order m")->required();
  diagrams->add_option("--max-order", opt.max_order, "Largest order accepted");
  auto* verify = app.add_subcommand("verify", "Run the invariant checks and report pass/fail");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return kExitInputError;
  }

  try {
    if (build->parsed()) return cmd_build(opt, out);
    if (spectrum->parsed()) return cmd_spectrum(opt, out);
    if (effective->parsed()) return cmd_effective(opt, out);
    if (bloch->parsed()) return cmd_bloch(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out, err);
    if (diagrams->parsed()) return cmd_diagrams(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
  } catch (const Error& e) {
    write_error(err, error_code_name(e.code()), e.detail());
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    write_error(err, "IoError", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace kgadget
