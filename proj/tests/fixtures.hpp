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

#include <string>

#include <doctest.h>

#include "kgadget/error.hpp"
#include "kgadget/hamiltonian.hpp"

#define CHECK_ERROR_CODE(expr, expected)                                    \
  do {                                                                      \
    try {                                                                   \
      (void)(expr);                                                         \
      FAIL_CHECK("expected " << kgadget::error_code_name(expected));        \
    } catch (const kgadget::Error& caught_) {                               \
      CHECK_MESSAGE(caught_.code() == (expected), std::string(caught_.what()));          \
    }                                                                       \
  } while (false)

namespace kgadget::fixture {

inline std::string data_path(const std::string& name) {
  return std::string(KGADGET_DATA_DIR) + "/" + name;
}

inline KLocalHamiltonian load(const std::string& name) { return load_hamiltonian(data_path(name)); }

}  // namespace kgadget::fixture
