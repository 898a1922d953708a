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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace qsq {

// Arbitrary-precision exact rational. All stabilizer-class correlation
// quantities are dyadic rationals and are carried in this type end to end.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational pow2_rational(int exponent) {
  Rational r = 1;
  if (exponent >= 0) {
    r = Rational(BigInt(1) << exponent);
  } else {
    r = Rational(BigInt(1), BigInt(1) << (-exponent));
  }
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact conversion of a finite double.
Rational rational_from_double(double value);

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qsq
