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

#include "kgadget/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "kgadget/error.hpp"

namespace kgadget {

using nlohmann::json;

AxisOperator::AxisOperator(std::array<double, 3> axis) : axis_(axis) {
  for (double a : axis) {
    if (!std::isfinite(a)) throw Error(ErrorCode::NonUnitAxis, "axis component is not finite");
  }
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw Error(ErrorCode::NonUnitAxis, "axis norm " + std::to_string(norm));
  }
}

CMatrix axis_matrix(const AxisOperator& op) {
  const auto& n = op.axis();
  return n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z();
}

KLocalHamiltonian::KLocalHamiltonian(std::size_t n, std::size_t k, std::vector<LocalTerm> terms)
    : n_(n), k_(k), terms_(std::move(terms)) {
  if (k_ < 2) throw Error(ErrorCode::SchemaError, "locality k must be at least 2");
  if (terms_.empty()) throw Error(ErrorCode::SchemaError, "at least one term is required");
  for (std::size_t s = 0; s < terms_.size(); ++s) {
    const auto& term = terms_[s];
    if (!std::isfinite(term.coeff)) {
      throw Error(ErrorCode::SchemaError, "term " + std::to_string(s) + " has a non-finite coefficient");
    }
    if (term.factors.size() != k_) {
      throw Error(ErrorCode::LocalityMismatch, "term " + std::to_string(s) + " has " +
                                                   std::to_string(term.factors.size()) +
                                                   " factors, expected " + std::to_string(k_));
    }
    std::set<std::size_t> seen;
    for (const auto& f : term.factors) {
      if (f.qubit >= n_) {
        throw Error(ErrorCode::SchemaError, "term " + std::to_string(s) + " uses qubit " +
                                                    std::to_string(f.qubit) + " but n = " +
                                                    std::to_string(n_));
      }
      if (!seen.insert(f.qubit).second) {
        throw Error(ErrorCode::DuplicateQubitInTerm,
                    "term " + std::to_string(s) + " repeats qubit " + std::to_string(f.qubit));
      }
    }
  }
}

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::SchemaError, where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::SchemaError, where + " has unknown key '" + key + "'");
  }
  for (const char* a : allowed) {
    if (!obj.contains(a)) throw Error(ErrorCode::SchemaError, where + " is missing '" + a + "'");
  }
}

std::size_t read_count(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw Error(ErrorCode::SchemaError, where + " must be an integer");
  const auto value = v.get<long long>();
  if (value < 0) throw Error(ErrorCode::SchemaError, where + " must be nonnegative");
  return static_cast<std::size_t>(value);
}

AxisOperator read_axis(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "X") return AxisOperator::x();
    if (name == "Y") return AxisOperator::y();
    if (name == "Z") return AxisOperator::z();
    throw Error(ErrorCode::SchemaError, where + " names unknown axis '" + name + "'");
  }
  if (!v.is_array() || v.size() != 3) {
    throw Error(ErrorCode::SchemaError, where + " must be \"X\", \"Y\", \"Z\" or a 3-vector");
  }
  std::array<double, 3> axis{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw Error(ErrorCode::SchemaError, where + " components must be numbers");
    axis[i] = v[i].get<double>();
  }
  return AxisOperator(axis);
}

}  // namespace

KLocalHamiltonian hamiltonian_from_json(const json& doc) {
  require_keys(doc, {"n", "k", "terms"}, "document");
  const std::size_t n = read_count(doc["n"], "n");
  const std::size_t k = read_count(doc["k"], "k");
  if (!doc["terms"].is_array()) throw Error(ErrorCode::SchemaError, "terms must be an array");

  std::vector<LocalTerm> terms;
  for (std::size_t s = 0; s < doc["terms"].size(); ++s) {
    const json& t = doc["terms"][s];
    const std::string where = "terms[" + std::to_string(s) + "]";
    require_keys(t, {"coeff", "factors"}, where);
    if (!t["coeff"].is_number()) throw Error(ErrorCode::SchemaError, where + ".coeff must be a number");
    if (!t["factors"].is_array()) throw Error(ErrorCode::SchemaError, where + ".factors must be an array");
    LocalTerm term{t["coeff"].get<double>(), {}};
    for (std::size_t j = 0; j < t["factors"].size(); ++j) {
      const json& f = t["factors"][j];
      const std::string fwhere = where + ".factors[" + std::to_string(j) + "]";
      require_keys(f, {"qubit", "axis"}, fwhere);
      term.factors.push_back(Factor{read_count(f["qubit"], fwhere + ".qubit"),
                                    read_axis(f["axis"], fwhere + ".axis")});
    }
    terms.push_back(std::move(term));
  }
  return KLocalHamiltonian(n, k, std::move(terms));
}

KLocalHamiltonian parse_hamiltonian(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  return hamiltonian_from_json(doc);
}

KLocalHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_hamiltonian(buffer.str());
}

json to_json(const KLocalHamiltonian& h) {
  json terms = json::array();
  for (const auto& term : h.terms()) {
    json factors = json::array();
    for (const auto& f : term.factors) {
      const auto& a = f.op.axis();
      factors.push_back({{"qubit", f.qubit}, {"axis", {a[0], a[1], a[2]}}});
    }
    terms.push_back({{"coeff", term.coeff}, {"factors", std::move(factors)}});
  }
  return {{"n", h.n()}, {"k", h.k()}, {"terms", std::move(terms)}};
}

CMatrix term_matrix(const LocalTerm& term, std::size_t total_qubits) {
  std::vector<std::pair<std::size_t, CMatrix>> factors;
  for (const auto& f : term.factors) factors.emplace_back(f.qubit, axis_matrix(f.op));
  return embed_product(factors, total_qubits);
}

CMatrix comp_matrix(const KLocalHamiltonian& h, std::size_t max_qubits) {
  if (h.n() > max_qubits) {
    throw Error(ErrorCode::DimensionOverflow,
                "n = " + std::to_string(h.n()) + " exceeds cap " + std::to_string(max_qubits));
  }
  const std::size_t dim = std::size_t{1} << h.n();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& term : h.terms()) out += term.coeff * term_matrix(term, h.n());
  return out;
}

}  // namespace kgadget
