// Copyright 2026 The qsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qsq {

// Operands of a binary operation act on different qubit counts.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested work is beyond the configured enumeration / sweep budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact evaluation was requested but no closed form is available.
class ExactUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A learner's promise about the target was contradicted by oracle answers.
class PromiseViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A GF(2) linear system has no solution.
class InconsistentSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query or oracle response broke the statistical-query contract.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require_same_n(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": qubit count " + std::to_string(a) +
                            " != " + std::to_string(b));
  }
}

}  // namespace qsq
