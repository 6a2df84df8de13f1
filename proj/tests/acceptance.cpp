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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kgadget/bloch.hpp"
#include "kgadget/effective.hpp"
#include "kgadget/gadget.hpp"
#include "kgadget/hamiltonian.hpp"
#include "kgadget/report.hpp"
#include "kgadget/sector.hpp"
#include "oracles.hpp"

using namespace kgadget;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string data(const std::string& name) { return std::string(KGADGET_DATA_DIR) + "/" + name; }

KLocalHamiltonian load(const std::string& name) { return load_hamiltonian(data(name)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double frobenius_rel(const CMatrix& got, const CMatrix& want) { return (got - want).norm() / want.norm(); }

// Criteria 1-3: mean-energy sweep over 0.04 * 2^-i, i = 0..4.
Outcome sweep_criterion(const std::string& name, std::size_t sector_dim, double budget_s) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_sweep(load(name), geometric_range(0.04, 0.5, 5), {});
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  bool ok = elapsed < budget_s;
  std::vector<double> ratio;  // ascending lambda
  for (const auto& row : rows) {
    if (!row.ok()) return {false, "row at lambda " + fmt(row.lambda) + " failed: " + row.error_code};
    ok = ok && row.sector_dim == sector_dim;
    ratio.push_back(*row.ratio);
  }
  for (std::size_t i = 1; i < ratio.size(); ++i) ok = ok && ratio[i - 1] < ratio[i];
  d << "halving factors";
  for (std::size_t i = 0; i + 1 < ratio.size(); ++i) {
    const double q = ratio[i] / ratio[i + 1];
    d << ' ' << fmt(q);
    if (i < 3) ok = ok && q >= 0.35 && q <= 0.65;
  }
  d << "; time " << fmt(elapsed) << " s (budget " << budget_s << " s)";
  return {ok, d.str()};
}

struct Built {
  KLocalHamiltonian h;
  GadgetSystem system;
  SectorBasis basis;
};

Built build(const std::string& name, double lambda) {
  auto h = load(name);
  auto system = assemble(h, lambda, false);
  auto basis = build_sector_basis(system.layout);
  return {std::move(h), std::move(system), std::move(basis)};
}

double mimicry_delta(const SectorGadget& g, double lambda) {
  const RVector low = hermitian_eigendecompose(g.hamiltonian(lambda)).eigenvalues.head(8);
  std::vector<double> got(low.data(), low.data() + 8);
  const double mean = low.mean();
  for (double& x : got) x -= mean;
  const RVector target = hermitian_eigendecompose(1.5 * std::pow(lambda, 3) * oracle::pauli_string("XYZ")).eigenvalues;
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(got[static_cast<std::size_t>(i)] - target(i)));
  return worst;
}

Outcome criterion4() {
  const Built b = build("xyz.json", 0.02);
  const SectorGadget g = project_gadget(b.system, b.basis);
  const double d1 = mimicry_delta(g, 0.02);
  const double d2 = mimicry_delta(g, 0.01);
  const double q = d1 / d2;
  return {q >= 8.0 && q <= 32.0,
          "delta(0.02) " + fmt(d1) + ", delta(0.01) " + fmt(d2) + ", ratio " + fmt(q) + " (band [8, 32])"};
}

// P0 (op (x) X...X) P0 in the sector, built from full-space kron chains.
CMatrix projected_target(const Built& b, const std::string& comp_string) {
  const std::size_t k = b.system.layout.k();
  const CMatrix full = oracle::pauli_string(comp_string + std::string(k, 'X'));
  const CMatrix cat = cat_projector(b.system.layout).matrix;
  const CMatrix vecs = b.basis.vectors();
  return vecs.adjoint() * cat * full * cat * vecs;
}

Outcome criterion5() {
  const Built xyz = build("xyz.json", 0.02);
  const Built xyzz = build("xyzz.json", 0.02);
  const double e3 = frobenius_rel(compute_bloch_series(xyz.system, xyz.basis).effective_part(3),
                                  1.5 * projected_target(xyz, "XYZ"));
  const double e4 = frobenius_rel(compute_bloch_series(xyzz.system, xyzz.basis).effective_part(4),
                                  (-4.0 / 6.0) * projected_target(xyzz, "XYZZ"));
  return {e3 <= 1e-10 && e4 <= 1e-10, "relative Frobenius error k=3 " + fmt(e3) + ", k=4 " + fmt(e4)};
}

Outcome criterion6() {
  double worst = 0.0;
  for (const char* name : {"xyz.json", "xyzz.json"}) {
    const Built b = build(name, 0.02);
    const BlochSeries s = compute_bloch_series(b.system, b.basis);
    for (int m = 1; m < s.k_order; ++m) worst = std::max(worst, spectral_norm(s.effective_part(m)));
  }
  const Built xyz = build("xyz.json", 0.02);
  const double alpha2 = compute_bloch_series(xyz.system, xyz.basis).shift_poly[2];
  return {worst <= 1e-10 && std::abs(alpha2 + 1.5) <= 1e-10,
          "max sub-k remainder " + fmt(worst) + ", alpha2 " + std::to_string(alpha2)};
}

Outcome criterion7() {
  double worst = 0.0;
  for (const char* name : {"zz.json", "xyz.json"}) {
    const Built b = build(name, 0.02);
    const BlochProblem p = bloch_problem(b.system, b.basis);
    for (int m = 0; m <= 5; ++m)
      worst = std::max(worst, max_abs_entry(compute_U_order(p, m) - compute_U_recurrence(p, m)));
  }
  return {worst <= 1e-12, "max entry difference " + fmt(worst)};
}

Outcome criterion8() {
  const std::vector<std::size_t> catalan{1, 2, 5, 14, 42, 132, 429, 1430};
  bool ok = true;
  std::string counts;
  for (int m = 1; m <= 8; ++m) {
    const auto tuples = enumerate_tuples(TupleKind::U, m);
    const auto brute = oracle::brute_force_convex_tuples(m);
    ok = ok && tuples.size() == catalan[static_cast<std::size_t>(m - 1)] && tuples == brute;
    counts += (m > 1 ? " " : "") + std::to_string(tuples.size());
  }
  return {ok, "counts " + counts};
}

Outcome criterion9() {
  double commutator = 0.0;
  double penalty_err = 0.0;
  for (const char* name : {"xyz.json", "xyz_xyy.json", "xyzz.json", "zz.json"}) {
    const auto sys = assemble(load(name), 0.02, false);
    const CMatrix hg = sys.hamiltonian();
    for (std::size_t s = 0; s < sys.layout.r(); ++s) {
      const CMatrix p = register_parity(sys.layout, s);
      commutator = std::max(commutator, max_abs_entry(hg * p - p * hg));
    }
    const std::size_t nq = sys.layout.total_qubits();
    const std::size_t k = sys.layout.k();
    for (std::size_t x = 0; x < sys.layout.full_dim(); ++x) {
      double law = 0.0;
      for (std::size_t s = 0; s < sys.layout.r(); ++s) {
        int w = 0;
        for (std::size_t j = 0; j < k; ++j) w += qubit_bit(x, sys.layout.ancilla_index(s, j), nq);
        law += w * (static_cast<int>(k) - w);
      }
      const auto i = static_cast<Eigen::Index>(x);
      penalty_err = std::max(penalty_err, std::abs(sys.h_anc(i, i).real() - law));
    }
  }
  const double single = penalty_of_state(GadgetLayout(0, 1, 4), 0b0001);
  return {commutator <= 1e-12 && penalty_err == 0.0 && single == 3.0,
          "max commutator entry " + fmt(commutator) + ", penalty law error " + fmt(penalty_err) +
              ", |0001> penalty " + fmt(single)};
}

Outcome criterion10() {
  const Built b = build("xyz.json", 0.05);
  const BlochSeries s = compute_bloch_series(b.system, b.basis, 6);
  const auto& cert = s.certificate;
  const double limit = cert.geometric_ratio + 0.1;
  std::vector<double> norms;
  for (int m = 2; m <= 6; ++m)
    norms.push_back(std::pow(0.05, m) * spectral_norm(s.a_terms[static_cast<std::size_t>(m - 1)]));
  bool ok = cert.converges;
  std::string d = "norms";
  for (std::size_t i = 0; i < norms.size(); ++i) {
    d += ' ' + fmt(norms[i]);
    if (i > 0) ok = ok && norms[i] < norms[i - 1] && norms[i] / norms[i - 1] <= limit;
  }
  const bool flips = !convergence_certificate(with_lambda(b.system, 0.2, false)).converges;
  ok = ok && flips;
  d += "; ratio limit " + fmt(limit) + "; certified at 0.2: " + (flips ? "no" : "yes");
  return {ok, d};
}

Outcome criterion11() {
  const Built b = build("xyz.json", 0.02);
  const SectorGadget g = project_gadget(b.system, b.basis);
  const BlochSeries s = compute_bloch_series(b.system, b.basis);
  const auto diff = [&](double lambda) {
    const auto mean = error_ratio(g, b.h, b.basis, lambda, ShiftMode::MeanEnergy, &s);
    const auto poly = error_ratio(g, b.h, b.basis, lambda, ShiftMode::BlochPoly, &s);
    return std::abs(mean.shift_used - poly.shift_used);
  };
  const double d1 = diff(0.02);
  const double d2 = diff(0.01);
  const double q = d1 / d2;
  return {q >= 8.0 && q <= 32.0, "|shift difference| " + fmt(d1) + " -> " + fmt(d2) + ", ratio " + fmt(q)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

Outcome criterion12() {
  const std::string cli = KGADGET_CLI_PATH;
  const fs::path dir = fs::temp_directory_path() / "kgadget_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string d;
  bool ok = true;
  for (const char* name : {"xyz.json", "xyz_xyy.json", "xyzz.json"}) {
    const std::string cmd = "\"" + cli + "\" verify --input \"" + data(name) + "\" --lambda 0.02 > \"" +
                            (dir / "verify.json").string() + "\"";
    const int status = std::system(cmd.c_str());
    ok = ok && status == 0;
    d += std::string(name) + " exit " + std::to_string(status) + "; ";
  }
  std::vector<std::string> csv;
  for (const char* jobs : {"1", "4"}) {
    const fs::path out = dir / (std::string("sweep_") + jobs + ".csv");
    const std::string cmd = "\"" + cli + "\" sweep --input \"" + data("xyz_xyy.json") +
                            "\" --lambda-range 0.04:0.5:5 --jobs " + jobs + " --out \"" + out.string() + "\"";
    ok = ok && std::system(cmd.c_str()) == 0;
    csv.push_back(drop_last_column(slurp(out)));
  }
  const bool same = !csv[0].empty() && csv[0] == csv[1];
  ok = ok && same;
  d += std::string("sweep csv identical across jobs: ") + (same ? "yes" : "no");
  return {ok, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 XYZ sweep", [] { return sweep_criterion("xyz.json", 32, 10.0); }},
      {"2 XYZ+XYY sweep", [] { return sweep_criterion("xyz_xyy.json", 128, 60.0); }},
      {"3 XYZZ sweep", [] { return sweep_criterion("xyzz.json", 128, 60.0); }},
      {"4 spectral mimicry", criterion4},
      {"5 k-th order coefficient", criterion5},
      {"6 shift purity", criterion6},
      {"7 recurrence equivalence", criterion7},
      {"8 diagram counts", criterion8},
      {"9 structure exactness", criterion9},
      {"10 convergence and tails", criterion10},
      {"11 shift-mode agreement", criterion11},
      {"12 CLI contract", criterion12},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
