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

#include "qsq/bits.hpp"

#include <stdexcept>

#include "qsq/errors.hpp"

namespace qsq {

BitVector BitVector::from_string(std::string_view bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return out;
}

BitVector BitVector::from_uint(std::size_t size, std::uint64_t value) {
  if (size > 64) throw std::invalid_argument("from_uint supports at most 64 bits");
  BitVector out(size);
  if (size > 0) {
    out.words_[0] = size == 64 ? value : value & ((std::uint64_t{1} << size) - 1);
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_n(size_, other.size_, "BitVector xor");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_n(size_, other.size_, "BitVector and");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  require_same_n(size_, other.size_, "BitVector dot");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

}  // namespace qsq
