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
#include <string>
#include <string_view>

#include "qsq/bits.hpp"

namespace qsq {

enum class PauliKind : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliKind k);

// Signed n-qubit Pauli operator +/- P_0 (x) P_1 (x) ... (x) P_{n-1} in
// symplectic form. Qubit i is I/X/Y/Z for (x_i, z_i) = (0,0)/(1,0)/(1,1)/(0,1);
// qubit 0 is the leftmost tensor factor.
class PauliOperator {
 public:
  PauliOperator() = default;
  // +I on n qubits.
  explicit PauliOperator(std::size_t n) : x_(n), z_(n) {}
  PauliOperator(bool negative, BitVector x_bits, BitVector z_bits);

  // Accepts an optional leading '+', '-' or U+2212 followed by I/X/Y/Z.
  static PauliOperator parse(std::string_view text);
  static PauliOperator single(std::size_t n, std::size_t qubit, PauliKind kind,
                              bool negative = false);
  // Unsigned Pauli whose qubit-i letter is base-4 digit i of `index`
  // (0:I 1:X 2:Y 3:Z). Requires n <= 32.
  static PauliOperator from_index(std::size_t n, std::uint64_t index, bool negative = false);

  std::size_t n() const { return x_.size(); }
  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }
  const BitVector& x_bits() const { return x_; }
  const BitVector& z_bits() const { return z_; }

  PauliKind at(std::size_t qubit) const;
  void set(std::size_t qubit, PauliKind kind);

  bool is_identity_up_to_sign() const { return x_.none() && z_.none(); }
  std::size_t weight() const;

  PauliOperator negated() const {
    PauliOperator out = *this;
    out.negative_ = !out.negative_;
    return out;
  }
  PauliOperator unsigned_part() const {
    PauliOperator out = *this;
    out.negative_ = false;
    return out;
  }

  // Always prints an explicit sign: "+XYZ", "-IZ".
  std::string to_string() const;

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;
  friend std::strong_ordering operator<=>(const PauliOperator& a, const PauliOperator& b);

 private:
  bool negative_ = false;
  BitVector x_;
  BitVector z_;
};

// i^phase times an unsigned Pauli string. Products of real-signed Paulis can be
// imaginary, so the full phase group {1, i, -1, -i} is tracked here.
struct PhasedPauli {
  std::uint8_t phase = 0;  // exponent of i, in [0, 4)
  PauliOperator pauli;     // sign bit always clear

  bool is_real_signed() const { return (phase & 1u) == 0; }
  // The member of {+1,-1}.{I,X,Y,Z}^n equal to this operator; throws
  // std::domain_error when the phase is imaginary.
  PauliOperator to_signed() const;

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
};

PhasedPauli to_phased(const PauliOperator& p);

PhasedPauli pauli_product(const PauliOperator& a, const PauliOperator& b);
PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b);

bool commutes(const PauliOperator& a, const PauliOperator& b);

// tr(P): +/-2^n for +/-I, otherwise 0. Requires n <= 62 for the identity case.
std::int64_t pauli_trace_sign(const PauliOperator& p);

// The two-outcome effect E = (I + P)/2. P = +I gives E = I, P = -I gives E = 0.
struct PauliMeasurement {
  PauliOperator pauli;

  std::size_t n() const { return pauli.n(); }
  bool is_always_accept() const { return pauli.is_identity_up_to_sign() && !pauli.negative(); }
  bool is_always_reject() const { return pauli.is_identity_up_to_sign() && pauli.negative(); }

  friend bool operator==(const PauliMeasurement&, const PauliMeasurement&) = default;
};

}  // namespace qsq
