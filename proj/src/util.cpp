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

#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qsq/random.hpp"
#include "qsq/rational.hpp"

namespace qsq {

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot convert non-finite double");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent
  // 53 significant bits make the scaled mantissa an exact integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  return Rational(BigInt(scaled)) * pow2_rational(exponent - 53);
}

void run_blocks(std::size_t num_blocks, std::size_t jobs,
                const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || num_blocks <= 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) fn(b);
    return;
  }
  const std::size_t workers = std::min(jobs, num_blocks);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < num_blocks; b += workers) fn(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qsq
