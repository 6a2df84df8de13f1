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

#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "kgadget/cli.hpp"
#include "kgadget/report.hpp"
#include "kgadget/serialize.hpp"
#include "oracles.hpp"

using namespace kgadget;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kgadget_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

const std::string xyz = fixture::data_path("xyz.json");

}  // namespace

TEST_CASE("geometric lambda ranges") {
  const auto r = geometric_range(0.04, 0.5, 3);
  CHECK(r == std::vector<double>{0.04, 0.02, 0.01});
  CHECK(parse_lambda_range("0.04:0.5:3") == r);
  CHECK_ERROR_CODE(parse_lambda_range("0.04:0.5"), ErrorCode::UsageError);
  CHECK_ERROR_CODE(parse_lambda_range("0.04:0.5:0"), ErrorCode::UsageError);
  CHECK_ERROR_CODE(parse_lambda_range("a:b:c"), ErrorCode::UsageError);
}

TEST_CASE("catalan numbers") {
  for (int m = 0; m <= 15; ++m) CHECK(double(catalan_number(m)) == oracle::binomial(2 * m, m) / (m + 1));
}

TEST_CASE("shortest round trip doubles") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.5) == "1.5");
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  for (int i = 0; i < 500; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
    char buf[64];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
    CHECK(s.size() <= static_cast<std::size_t>(len));
  }
}

TEST_CASE("matrix json layout") {
  CMatrix m = CMatrix::Zero(3, 3);
  m(2, 0) = Complex{1.0, -2.0};
  m(0, 1) = 0.5;
  m(1, 1) = 1e-16;
  CHECK(matrix_to_json(m) == R"({"dim":3,"entries":[[0,1,0.5,0],[2,0,1,-2]]})");
  CHECK(matrix_to_json(CMatrix::Zero(2, 2)) == R"({"dim":2,"entries":[]})");
}

TEST_CASE("matrix json round trip") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix m = oracle::random_hermitian(rng, 1 + trial);
    CHECK(matrix_from_json(matrix_to_json(m)) == m);
  }
  CHECK_ERROR_CODE(matrix_from_json("{\"dim\":2}"), ErrorCode::SchemaError);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("sweep rows are sorted and finite") {
  const auto h = fixture::load("xyz.json");
  const auto rows = run_sweep(h, {0.01, 0.04, 0.02}, {});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].lambda == 0.01);
  CHECK(rows[2].lambda == 0.04);
  for (const auto& row : rows) {
    REQUIRE(row.ok());
    CHECK(row.sector_dim == 32);
    CHECK(*row.ratio > 0.0);
  }
  CHECK(*rows[0].ratio < *rows[1].ratio);
  CHECK(*rows[1].ratio < *rows[2].ratio);
}

TEST_CASE("sweep csv format") {
  const auto h = fixture::load("xyz.json");
  SweepOptions opt;
  opt.mode = ShiftMode::BlochPoly;
  const std::string csv = sweep_csv(run_sweep(h, {0.02, 0.01}, opt));
  CHECK(csv.rfind(std::string(kSweepHeader) + "\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find(",bloch,32,") != std::string::npos);
}

TEST_CASE("sweep is independent of the job count") {
  const auto h = fixture::load("xyz_xyy.json");
  const auto lambdas = geometric_range(0.04, 0.5, 6);
  SweepOptions one, four;
  four.jobs = 4;
  CHECK(drop_last_column(sweep_csv(run_sweep(h, lambdas, one))) ==
        drop_last_column(sweep_csv(run_sweep(h, lambdas, four))));
}

TEST_CASE("strict sweep records per-row errors") {
  const auto h = fixture::load("xyz.json");
  SweepOptions opt;
  opt.strict = true;
  const auto rows = run_sweep(h, {0.01, 0.3}, opt);
  CHECK(rows[0].ok());
  CHECK_FALSE(rows[1].ok());
  CHECK(rows[1].error_code == "LambdaTooLarge");
  const auto errors = nlohmann::json::parse(sweep_errors_json(rows));
  CHECK(errors.size() == 1);
  CHECK(errors[0]["lambda"] == 0.3);
}

TEST_CASE("verify report") {
  const auto report = run_verify(fixture::load("xyz.json"), 0.02);
  CHECK(report.passed());
  const auto j = nlohmann::json::parse(report.to_json());
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() == report.checks.size());
  const auto loose = run_verify(fixture::load("xyz.json"), 0.2);
  for (const auto& c : loose.checks)
    if (c.name == "convergence_certified") {
      CHECK_FALSE(c.pass);
      CHECK_FALSE(c.required);
    }
}

TEST_CASE("cli build writes the gadget operators") {
  const fs::path dir = scratch("build");
  const auto r = cli({"build", "--input", xyz, "--lambda", "0.1", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
  CHECK(meta["total_qubits"] == 6);
  CHECK(meta["lambda_bound"].get<double>() == doctest::Approx(1.0 / 6.0));
  const CMatrix h_anc = matrix_from_json(slurp(dir / "h_anc.json"));
  CHECK(h_anc.rows() == 64);
  CHECK(hermitian_eigendecompose(h_anc).eigenvalues.maxCoeff() == doctest::Approx(2.0));
  CHECK(matrix_from_json(slurp(dir / "v.json")).rows() == 64);
}

TEST_CASE("cli input errors exit with code 2") {
  const fs::path dir = scratch("bad");
  std::ofstream(dir / "bad.json") << "{\"n\": 3, \"k\": ";
  auto r = cli({"effective", "--input", (dir / "bad.json").string(), "--lambda", "0.02"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"] == "SchemaError");
  r = cli({"build", "--input", xyz, "--lambda", "0.2", "--strict"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"] == "LambdaTooLarge");
  r = cli({"sweep", "--input", xyz, "--lambda", ""});
  CHECK(r.code == 2);
  r = cli({"sweep", "--input", xyz});
  CHECK(r.code == 2);
  r = cli({"frobnicate"});
  CHECK(r.code == 2);
  r = cli({"effective", "--input", "/nonexistent.json", "--lambda", "0.02"});
  CHECK(nlohmann::json::parse(r.err)["error"] == "IoError");
  r = cli({"effective", "--input", xyz, "--lambda", "0.02", "--max-qubits", "4"});
  CHECK(nlohmann::json::parse(r.err)["error"] == "DimensionOverflow");
}

TEST_CASE("cli spectrum and effective") {
  auto r = cli({"spectrum", "--input", xyz, "--lambda", "0.05"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("index,eigenvalue\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 33);
  r = cli({"effective", "--input", xyz, "--lambda", "0.02", "--shift-mode", "bloch"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["d"] == 8);
  CHECK(j["shift_mode"] == "bloch");
  CHECK(j["ratio"].get<double>() < 0.05);
}

TEST_CASE("cli bloch lists the shift polynomial") {
  const auto r = cli({"bloch", "--input", xyz, "--lambda", "0.02", "--order", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["shift_poly"].size() == 5);
  CHECK(j["shift_poly"][2].get<double>() == doctest::Approx(-1.5));
  CHECK(j["a_terms"].size() == 4);
  CHECK(j["certificate"]["converges"] == true);
}

TEST_CASE("cli diagrams") {
  auto r = cli({"diagrams", "--kind", "U", "--order", "3"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["count"] == 5);
  r = cli({"diagrams", "--kind", "U", "--order", "5"});
  CHECK(nlohmann::json::parse(r.out)["count"] == 42);
  r = cli({"diagrams", "--kind", "A", "--order", "2"});
  CHECK(nlohmann::json::parse(r.out)["tuples"] == nlohmann::json::parse("[[1]]"));
  r = cli({"diagrams", "--kind", "U", "--order", "0"});
  CHECK(nlohmann::json::parse(r.out)["count"] == 0);
  r = cli({"diagrams", "--kind", "U", "--order", "13"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"] == "OrderTooHigh");
  r = cli({"diagrams", "--kind", "U", "--order", "13", "--max-order", "13"});
  CHECK(nlohmann::json::parse(r.out)["count"] == 742900);
}

TEST_CASE("cli sweep writes csv and an error sidecar") {
  const fs::path dir = scratch("sweep");
  const fs::path out = dir / "s.csv";
  auto r = cli({"sweep", "--input", xyz, "--lambda", "0.01,0.3", "--strict", "--out", out.string()});
  CHECK(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(nlohmann::json::parse(slurp(dir / "s.csv.errors.json")).size() == 1);
  r = cli({"sweep", "--input", xyz, "--lambda", "0.3,0.4", "--strict", "--out", out.string()});
  CHECK(r.code == 1);
}

TEST_CASE("cli verify exit codes") {
  CHECK(cli({"verify", "--input", fixture::data_path("zz.json"), "--lambda", "0.02"}).code == 0);
  CHECK(cli({"verify", "--input", xyz, "--lambda", "0.02"}).code == 0);
}
