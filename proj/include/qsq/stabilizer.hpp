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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qsq/bits.hpp"
#include "qsq/pauli.hpp"
#include "qsq/rational.hpp"

namespace qsq {

enum class Membership { Plus, Minus, Absent };

// Stabilizer group of an n-qubit pure stabilizer state, stored as the unique
// reduced row-echelon tableau of its n generators. Pivot columns are scanned
// X-block first (x_0..x_{n-1}) and then Z-block (z_0..z_{n-1}); every pivot
// column is set in exactly one generator. Signs are whatever the group
// dictates for those canonical elements, so equal groups give bit-identical
// tableaux.
class StabilizerGroup {
 public:
  // Accepts any generating list of real-signed Paulis. Throws
  // std::invalid_argument if the generators do not commute, generate -I, or
  // generate a group of order other than 2^n.
  explicit StabilizerGroup(std::vector<PauliOperator> generators);

  // One signed Pauli string per line; blank lines are ignored.
  static StabilizerGroup parse(std::string_view tableau_text);
  // |y> for a computational-basis bit string y: generators (-1)^{y_i} Z_i.
  static StabilizerGroup basis_state(const BitVector& y);
  static StabilizerGroup zero_state(std::size_t n) { return basis_state(BitVector(n)); }

  std::size_t n() const { return n_; }
  const std::vector<PauliOperator>& generators() const { return generators_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  // Visits all 2^n signed group elements in Gray-code order starting at +I.
  void for_each_element(const std::function<void(const PauliOperator&)>& fn) const;
  std::vector<PauliOperator> elements() const;

  // Tableau text: n lines of signed Pauli strings.
  std::string to_string() const;

  friend bool operator==(const StabilizerGroup&, const StabilizerGroup&) = default;
  friend std::strong_ordering operator<=>(const StabilizerGroup& a, const StabilizerGroup& b);

 private:
  std::size_t n_ = 0;
  std::vector<PauliOperator> generators_;
  std::vector<std::size_t> pivots_;
};

// Plus if P in S, Minus if -P in S, Absent otherwise.
Membership contains(const StabilizerGroup& s, const PauliOperator& p);

// tr(P rho) for the state stabilized by S: +1, -1 or 0.
int trace_pauli(const StabilizerGroup& s, const PauliOperator& p);

// tr(E rho) for E = (I + P)/2: exactly 0, 1/2 or 1.
Rational trace_measurement(const StabilizerGroup& s, const PauliMeasurement& e);

struct SignedIntersection {
  std::uint64_t plus = 0;   // |S intersect T|
  std::uint64_t minus = 0;  // |S intersect (-T)|
  friend bool operator==(const SignedIntersection&, const SignedIntersection&) = default;
};

// Exact counts by walking the 2^n elements of S. Requires n <= 20.
SignedIntersection signed_intersection_counts(const StabilizerGroup& s, const StabilizerGroup& t);

inline constexpr std::size_t kMaxEnumerationQubits = 3;

// Every n-qubit stabilizer group, sorted by canonical tableau. Throws
// BudgetExceeded for n > kMaxEnumerationQubits and std::invalid_argument for n = 0.
std::vector<StabilizerGroup> enumerate_stabilizer_groups(std::size_t n);

}  // namespace qsq
