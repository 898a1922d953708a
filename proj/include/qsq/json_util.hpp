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

#include <cstdint>
#include <limits>

#include "json.hpp"
#include "qsq/rational.hpp"

namespace qsq {

// {"num": n, "den": d} with integers, or decimal strings when a part does not
// fit in 64 bits.
inline nlohmann::json rational_to_json(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt lim = std::numeric_limits<std::int64_t>::max();
  if (num <= lim && -num <= lim && den <= lim) {
    return {{"num", num.convert_to<std::int64_t>()}, {"den", den.convert_to<std::int64_t>()}};
  }
  return {{"num", num.str()}, {"den", den.str()}};
}

}  // namespace qsq
