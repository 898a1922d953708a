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

#include "qsq/pauli.hpp"

#include <bit>
#include <stdexcept>

#include "qsq/errors.hpp"

namespace qsq {

namespace {

// Exponent e of i in a.b = i^e (a XOR b), summed over qubits, for the unsigned
// strings. Uses Y = i.X.Z so each factor is i^{xz} X^x Z^z, and
// Z^{z1} X^{x2} = (-1)^{z1 x2} X^{x2} Z^{z1}.
unsigned product_phase_exponent(const BitVector& ax, const BitVector& az, const BitVector& bx,
                                const BitVector& bz) {
  std::uint64_t e = 0;
  for (std::size_t w = 0; w < ax.num_words(); ++w) {
    const std::uint64_t x1 = ax.word(w), z1 = az.word(w);
    const std::uint64_t x2 = bx.word(w), z2 = bz.word(w);
    const std::uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
    e += static_cast<std::uint64_t>(std::popcount(x1 & z1));
    e += static_cast<std::uint64_t>(std::popcount(x2 & z2));
    e += 2 * static_cast<std::uint64_t>(std::popcount(z1 & x2));
    e += 3 * static_cast<std::uint64_t>(std::popcount(x3 & z3));  // -1 mod 4
  }
  return static_cast<unsigned>(e & 3u);
}

}  // namespace

char pauli_char(PauliKind k) {
  switch (k) {
    case PauliKind::I:
      return 'I';
    case PauliKind::X:
      return 'X';
    case PauliKind::Y:
      return 'Y';
    case PauliKind::Z:
      return 'Z';
  }
  return '?';
}

PauliOperator::PauliOperator(bool negative, BitVector x_bits, BitVector z_bits)
    : negative_(negative), x_(std::move(x_bits)), z_(std::move(z_bits)) {
  require_same_n(x_.size(), z_.size(), "PauliOperator bits");
}

PauliOperator PauliOperator::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  } else if (text.starts_with("\xE2\x88\x92")) {  // U+2212 MINUS SIGN
    negative = true;
    text.remove_prefix(3);
  }
  if (text.empty()) throw std::invalid_argument("Pauli string has no qubits");
  PauliOperator out(text.size());
  out.negative_ = negative;
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I':
        break;
      case 'X':
        out.x_.set(i, true);
        break;
      case 'Y':
        out.x_.set(i, true);
        out.z_.set(i, true);
        break;
      case 'Z':
        out.z_.set(i, true);
        break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" + std::string(1, text[i]) + "'");
    }
  }
  return out;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t qubit, PauliKind kind,
                                    bool negative) {
  if (qubit >= n) throw std::out_of_range("qubit index out of range");
  PauliOperator out(n);
  out.negative_ = negative;
  out.set(qubit, kind);
  return out;
}

PauliOperator PauliOperator::from_index(std::size_t n, std::uint64_t index, bool negative) {
  if (n > 32) throw std::invalid_argument("from_index supports at most 32 qubits");
  PauliOperator out(n);
  out.negative_ = negative;
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, static_cast<PauliKind>((index >> (2 * i)) & 3u));
  }
  return out;
}

PauliKind PauliOperator::at(std::size_t qubit) const {
  const bool x = x_.get(qubit), z = z_.get(qubit);
  if (x) return z ? PauliKind::Y : PauliKind::X;
  return z ? PauliKind::Z : PauliKind::I;
}

void PauliOperator::set(std::size_t qubit, PauliKind kind) {
  x_.set(qubit, kind == PauliKind::X || kind == PauliKind::Y);
  z_.set(qubit, kind == PauliKind::Z || kind == PauliKind::Y);
}

std::size_t PauliOperator::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.num_words(); ++w) {
    total += static_cast<std::size_t>(std::popcount(x_.word(w) | z_.word(w)));
  }
  return total;
}

std::string PauliOperator::to_string() const {
  std::string out;
  out.reserve(n() + 1);
  out.push_back(negative_ ? '-' : '+');
  for (std::size_t i = 0; i < n(); ++i) out.push_back(pauli_char(at(i)));
  return out;
}

std::strong_ordering operator<=>(const PauliOperator& a, const PauliOperator& b) {
  if (auto c = a.x_ <=> b.x_; c != 0) return c;
  if (auto c = a.z_ <=> b.z_; c != 0) return c;
  return a.negative_ <=> b.negative_;
}

PauliOperator PhasedPauli::to_signed() const {
  if (!is_real_signed()) throw std::domain_error("Pauli product has an imaginary phase");
  PauliOperator out = pauli.unsigned_part();
  return phase == 2 ? out.negated() : out;
}

PhasedPauli to_phased(const PauliOperator& p) {
  return PhasedPauli{static_cast<std::uint8_t>(p.negative() ? 2 : 0), p.unsigned_part()};
}

PhasedPauli pauli_product(const PauliOperator& a, const PauliOperator& b) {
  require_same_n(a.n(), b.n(), "pauli_product");
  unsigned e = product_phase_exponent(a.x_bits(), a.z_bits(), b.x_bits(), b.z_bits());
  if (a.negative()) e += 2;
  if (b.negative()) e += 2;
  PhasedPauli out;
  out.phase = static_cast<std::uint8_t>(e & 3u);
  out.pauli = PauliOperator(false, a.x_bits() ^ b.x_bits(), a.z_bits() ^ b.z_bits());
  return out;
}

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  PhasedPauli out = pauli_product(a.pauli, b.pauli);
  out.phase = static_cast<std::uint8_t>((out.phase + a.phase + b.phase) & 3u);
  return out;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  require_same_n(a.n(), b.n(), "commutes");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.x_bits().num_words(); ++w) {
    acc ^= (a.x_bits().word(w) & b.z_bits().word(w)) ^ (a.z_bits().word(w) & b.x_bits().word(w));
  }
  return (std::popcount(acc) & 1) == 0;
}

std::int64_t pauli_trace_sign(const PauliOperator& p) {
  if (!p.is_identity_up_to_sign()) return 0;
  if (p.n() > 62) throw std::overflow_error("tr(+/-I) does not fit in 64 bits for n > 62");
  const std::int64_t dim = std::int64_t{1} << p.n();
  return p.negative() ? -dim : dim;
}

}  // namespace qsq
