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
#include <vector>

#include "qsq/pconcept.hpp"
#include "qsq/rational.hpp"

namespace qsq {

// A finite p-concept class held through its exact Gram matrix of inner products
// <c_i, c_j>_D.
class ConceptClass {
 public:
  // Exact Gram over D; throws ExactUnavailable when some pair has no exact value.
  static ConceptClass from_states(const std::vector<QuantumState>& states,
                                  const MeasurementDistribution& d);
  // Throws unless the matrix is square and symmetric.
  static ConceptClass from_gram(std::vector<std::vector<Rational>> gram);

  std::size_t size() const { return gram_.size(); }
  const Rational& inner(std::size_t i, std::size_t j) const { return gram_[i][j]; }
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }

  // max_i ||c_i||^2.
  Rational kappa() const;
  // min_i ||c_i||^2.
  Rational min_norm_sq() const;
  // max_{i != j} |<c_i, c_j>|, zero for a singleton.
  Rational max_off_diagonal() const;

 private:
  explicit ConceptClass(std::vector<std::vector<Rational>> gram) : gram_(std::move(gram)) {}
  std::vector<std::vector<Rational>> gram_;
};

// (1/|C|^2) sum_{c, c'} |<c, c'>|, diagonal included.
Rational average_correlation(const ConceptClass& c);
// Same over the sub-class given by indices.
Rational average_correlation(const ConceptClass& c, const std::vector<std::size_t>& subset);

struct SDAReport {
  enum class Kind { kExact, kUnbounded, kLowerBound };

  Kind kind = Kind::kExact;
  Rational gamma;  // threshold
  std::size_t class_size = 0;
  // kExact: the largest integer d (possibly 0) such that every subset of size
  // >= |C|/d has average correlation <= gamma.
  std::size_t exact_value = 0;
  // kExact: |C| / s_max, the supremum of admissible real d (not attained).
  Rational supremum;
  // kLowerBound: |C| gamma' / (kappa - gamma_pair).
  Rational lower_bound;
  Rational kappa;
  Rational gamma_pair;
  Rational min_norm_sq;
  // kExact: a largest subset whose average correlation exceeds gamma.
  std::vector<std::size_t> witness;
};

inline constexpr std::size_t kMaxExactSdaClassSize = 24;

// Exhaustive subset sweep, largest subsets first. Above max_class_size it falls
// back to sda_bound with gamma' = gamma - max_off_diagonal and reports kLowerBound;
// throws BudgetExceeded when that fallback is unavailable.
SDAReport sda_exact(const ConceptClass& c, const Rational& gamma,
                    std::size_t max_class_size = kMaxExactSdaClassSize);

// sda(C, gamma_pair + gamma_prime) >= |C| gamma_prime / (kappa - gamma_pair).
// Throws ContractViolation if some pair or norm breaks the stated hypotheses,
// std::invalid_argument unless gamma_prime > 0 and kappa > gamma_pair.
SDAReport sda_bound(const ConceptClass& c, const Rational& gamma_pair, const Rational& kappa,
                    const Rational& gamma_prime);

// Best integer lower bound carried by a report (floor for kLowerBound).
std::optional<BigInt> sda_integer_value(const SDAReport& report);

struct Verdict {
  bool tau_le_epsilon = false;
  bool epsilon_sq_le_beta_over_3 = false;
  bool norms_ge_beta = false;
  bool threshold_le_tau_sq = false;
  bool all_hold = false;
  std::vector<std::string> failures;
  std::string statement;
};

// Checks the side conditions under which report yields "learning to squared
// loss epsilon with tolerance tau needs at least sda(C, tau^2) queries".
Verdict verify_query_lower_bound(const SDAReport& report, double epsilon, double beta, double tau);

// JSON with rationals as {"num": "...", "den": "..."}.
std::string sda_report_to_json(const SDAReport& report);

}  // namespace qsq
