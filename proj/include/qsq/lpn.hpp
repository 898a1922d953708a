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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsq/bits.hpp"
#include "qsq/random.hpp"
#include "qsq/sq_oracle.hpp"

namespace qsq {

struct LPNExample {
  BitVector x;
  bool label = false;

  friend bool operator==(const LPNExample&, const LPNExample&) = default;
};

// Labels are x.secret mod 2, each flipped independently with probability eta.
struct LPNInstance {
  std::size_t n = 0;
  double eta = 0.0;
  std::vector<LPNExample> examples;
  std::optional<BitVector> secret;

  friend bool operator==(const LPNInstance&, const LPNInstance&) = default;
};

// Secret and example vectors uniform over {0,1}^n.
LPNInstance make_planted_lpn(std::size_t n, std::size_t m, double eta, Rng& rng);

// {"n": int, "eta": float, "examples": [[bitstring, bit], ...], "secret": bitstring}
std::string lpn_to_json(const LPNInstance& instance);
LPNInstance lpn_from_json(std::string_view text);

// (x, b) -> (E_x, (-1)^b). The parity measurement accepts |y> with probability
// 1 - (x.y mod 2), so the state label is +1 exactly when the parity bit is 0.
std::vector<LabeledExample> make_lpn_as_state_learning(const LPNInstance& instance);
// Inverse of make_lpn_as_state_learning. Throws std::invalid_argument on a
// measurement that is not a parity measurement or a label outside {-1, +1}.
std::vector<LPNExample> decode_state_learning_dataset(const std::vector<LabeledExample>& data);

struct ParitySolution {
  bool unique = false;
  // A solution; the full solution set is particular + span(null_basis).
  BitVector particular;
  std::vector<BitVector> null_basis;
};

// Solves x.y = b over GF(2). Throws InconsistentSystem when no y fits.
ParitySolution gaussian_elimination_parity(const std::vector<LPNExample>& data, std::size_t n);

inline constexpr std::size_t kMaxExhaustiveLpnBits = 20;
inline constexpr std::size_t kMaxReportedTies = 64;

struct ExhaustiveLPNResult {
  BitVector best;  // smallest candidate (as an integer) among the minimizers
  std::size_t best_disagreements = 0;
  std::size_t tie_count = 0;
  std::vector<BitVector> ties;  // at most kMaxReportedTies minimizers in increasing order
  // spectrum[k] = number of candidates with exactly k disagreements.
  std::vector<std::size_t> spectrum;
};

// Maximum-likelihood secret by sweeping all 2^n candidates in Gray-code order.
// Throws BudgetExceeded for n > kMaxExhaustiveLpnBits.
ExhaustiveLPNResult exhaustive_lpn_solver(const LPNInstance& instance);

// Maximum-likelihood basis state |y> for parity-measurement data: maximizes the
// empirical correlation sum_k Y_k f_y(E_k) through a Walsh-Hadamard transform of
// the label sums. Returns the same fields as exhaustive_lpn_solver.
ExhaustiveLPNResult parity_state_ml_solver(const std::vector<LabeledExample>& data, std::size_t n);

}  // namespace qsq
