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

#include <gtest/gtest.h>

#include <random>

namespace qsq {
namespace {

TEST(BitVector, StringRoundTrip) {
  const BitVector v = BitVector::from_string("1011001");
  EXPECT_EQ(v.size(), 7u);
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_EQ(v.to_string(), "1011001");
  EXPECT_EQ(v.popcount(), 4u);
}

TEST(BitVector, RejectsBadCharacters) { EXPECT_THROW(BitVector::from_string("10a"), std::invalid_argument); }

TEST(BitVector, FromUintMatchesBits) {
  const BitVector v = BitVector::from_uint(5, 0b10110);
  EXPECT_EQ(v.to_string(), "01101");
  EXPECT_EQ(v.to_uint(), 0b10110u);
}

TEST(BitVector, DotIsParityOfAnd) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 150;
    BitVector a(n);
    BitVector b(n);
    int expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool x = rng() & 1u;
      const bool y = rng() & 1u;
      a.set(i, x);
      b.set(i, y);
      expected ^= (x && y);
    }
    EXPECT_EQ(a.dot(b), expected == 1);
  }
}

TEST(BitVector, XorAndAreElementwise) {
  const BitVector a = BitVector::from_string("1100");
  const BitVector b = BitVector::from_string("1010");
  EXPECT_EQ((a ^ b).to_string(), "0110");
  EXPECT_EQ((a & b).to_string(), "1000");
}

TEST(BitVector, SizeMismatchThrows) {
  BitVector a(3);
  const BitVector b(4);
  EXPECT_THROW(a ^= b, std::invalid_argument);
}

TEST(BitVector, WideVectorsCrossWordBoundaries) {
  BitVector v(130);
  v.set(63, true);
  v.set(64, true);
  v.set(129, true);
  EXPECT_EQ(v.popcount(), 3u);
  v.flip(64);
  EXPECT_FALSE(v.get(64));
  EXPECT_FALSE(v.none());
}

}  // namespace
}  // namespace qsq
