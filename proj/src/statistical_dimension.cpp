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

#include "qsq/statistical_dimension.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qsq/json_util.hpp"
#include "qsq/errors.hpp"

namespace qsq {

namespace {

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

std::string kind_name(SDAReport::Kind k) {
  switch (k) {
    case SDAReport::Kind::kExact: return "exact";
    case SDAReport::Kind::kUnbounded: return "unbounded";
    case SDAReport::Kind::kLowerBound: return "lower_bound";
  }
  return "?";
}

// Subset sweep over integer-scaled absolute Gram entries.
class SubsetSweep {
 public:
  SubsetSweep(const std::vector<std::vector<std::int64_t>>& a) : a_(a), n_(a.size()) {}

  // Finds a subset of exactly `size` elements whose entry sum exceeds `limit`.
  bool find(std::size_t size, std::int64_t limit, std::vector<std::size_t>& witness) {
    size_ = size;
    limit_ = limit;
    chosen_.clear();
    if (!dfs(0, 0)) return false;
    witness = chosen_;
    return true;
  }

 private:
  bool dfs(std::size_t start, std::int64_t sum) {
    if (chosen_.size() == size_) return sum > limit_;
    const std::size_t remaining = size_ - chosen_.size();
    for (std::size_t k = start; k + remaining <= n_; ++k) {
      std::int64_t add = a_[k][k];
      for (std::size_t j : chosen_) add += 2 * a_[j][k];
      chosen_.push_back(k);
      if (dfs(k + 1, sum + add)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const std::vector<std::vector<std::int64_t>>& a_;
  std::size_t n_;
  std::size_t size_ = 0;
  std::int64_t limit_ = 0;
  std::vector<std::size_t> chosen_;
};

void fill_common(SDAReport& r, const ConceptClass& c) {
  r.class_size = c.size();
  r.kappa = c.kappa();
  r.gamma_pair = c.max_off_diagonal();
  r.min_norm_sq = c.min_norm_sq();
}

}  // namespace

ConceptClass ConceptClass::from_states(const std::vector<QuantumState>& states,
                                       const MeasurementDistribution& d) {
  const std::size_t n = states.size();
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Estimate e = inner_product(states[i], states[j], d, ExactMode{});
      if (!e.exact) throw ExactUnavailable("no exact inner product for concept pair");
      g[i][j] = *e.exact;
      g[j][i] = *e.exact;
    }
  }
  return ConceptClass(std::move(g));
}

ConceptClass ConceptClass::from_gram(std::vector<std::vector<Rational>> gram) {
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (gram[i].size() != gram.size()) throw std::invalid_argument("Gram matrix must be square");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram[i][j] != gram[j][i]) throw std::invalid_argument("Gram matrix must be symmetric");
    }
  }
  return ConceptClass(std::move(gram));
}

Rational ConceptClass::kappa() const {
  if (gram_.empty()) throw std::invalid_argument("empty concept class");
  Rational k = gram_[0][0];
  for (std::size_t i = 1; i < size(); ++i) k = std::max(k, gram_[i][i]);
  return k;
}

Rational ConceptClass::min_norm_sq() const {
  if (gram_.empty()) throw std::invalid_argument("empty concept class");
  Rational k = gram_[0][0];
  for (std::size_t i = 1; i < size(); ++i) k = std::min(k, gram_[i][i]);
  return k;
}

Rational ConceptClass::max_off_diagonal() const {
  Rational m = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) m = std::max(m, abs_rational(gram_[i][j]));
  }
  return m;
}

Rational average_correlation(const ConceptClass& c, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw std::invalid_argument("average correlation of an empty class");
  Rational total = 0;
  for (std::size_t i : subset) {
    for (std::size_t j : subset) total += abs_rational(c.inner(i, j));
  }
  const Rational s = static_cast<long long>(subset.size());
  return total / (s * s);
}

Rational average_correlation(const ConceptClass& c) {
  std::vector<std::size_t> all(c.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return average_correlation(c, all);
}

SDAReport sda_exact(const ConceptClass& c, const Rational& gamma, std::size_t max_class_size) {
  const std::size_t n = c.size();
  if (n == 0) throw std::invalid_argument("empty concept class");
  if (n > max_class_size) {
    const Rational pair = c.max_off_diagonal();
    if (gamma <= pair || c.kappa() <= pair) {
      throw BudgetExceeded("class of size " + std::to_string(n) +
                           " is too large for the subset sweep and the pairwise bound does not apply");
    }
    SDAReport r = sda_bound(c, pair, c.kappa(), gamma - pair);
    return r;
  }
  // Scale |G| to integers with a common denominator.
  BigInt scale = 1;
  for (const auto& row : c.gram()) {
    for (const auto& v : row) {
      const BigInt den = boost::multiprecision::denominator(v);
      scale = scale / boost::multiprecision::gcd(scale, den) * den;
    }
  }
  const BigInt entry_limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4) /
                             static_cast<long long>(n * n);
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational scaled = abs_rational(c.inner(i, j)) * Rational(scale);
      const BigInt v = boost::multiprecision::numerator(scaled);
      if (v > entry_limit) throw BudgetExceeded("Gram entries too large for the subset sweep");
      a[i][j] = v.convert_to<std::int64_t>();
    }
  }
  SDAReport r;
  r.gamma = gamma;
  fill_common(r, c);
  SubsetSweep sweep(a);
  for (std::size_t s = n; s >= 1; --s) {
    // Violation iff sum > gamma * scale * s^2; the sum is an integer.
    const Rational bound = gamma * Rational(scale) * Rational(static_cast<long long>(s * s));
    if (bound < 0) {
      r.witness.clear();
      for (std::size_t k = 0; k < s; ++k) r.witness.push_back(k);
    } else {
      const BigInt fl = boost::multiprecision::numerator(bound) / boost::multiprecision::denominator(bound);
      if (fl > BigInt(std::numeric_limits<std::int64_t>::max())) continue;
      if (!sweep.find(s, fl.convert_to<std::int64_t>(), r.witness)) continue;
    }
    r.kind = SDAReport::Kind::kExact;
    r.supremum = Rational(static_cast<long long>(n)) / Rational(static_cast<long long>(s));
    r.exact_value = (n + s - 1) / s - 1;
    return r;
  }
  r.kind = SDAReport::Kind::kUnbounded;
  return r;
}

SDAReport sda_bound(const ConceptClass& c, const Rational& gamma_pair, const Rational& kappa,
                    const Rational& gamma_prime) {
  if (c.size() == 0) throw std::invalid_argument("empty concept class");
  if (!(gamma_prime > 0)) throw std::invalid_argument("gamma' must be positive");
  if (!(kappa > gamma_pair)) throw std::invalid_argument("kappa must exceed the pairwise bound");
  if (c.max_off_diagonal() > gamma_pair) {
    throw ContractViolation("some pair has |<c, c'>| = " + to_string(c.max_off_diagonal()) +
                            " above " + to_string(gamma_pair));
  }
  if (c.kappa() > kappa) {
    throw ContractViolation("some concept has squared norm " + to_string(c.kappa()) + " above " +
                            to_string(kappa));
  }
  SDAReport r;
  r.kind = SDAReport::Kind::kLowerBound;
  r.gamma = gamma_pair + gamma_prime;
  fill_common(r, c);
  r.lower_bound = Rational(static_cast<long long>(c.size())) * gamma_prime / (kappa - gamma_pair);
  return r;
}

std::optional<BigInt> sda_integer_value(const SDAReport& report) {
  switch (report.kind) {
    case SDAReport::Kind::kExact: return BigInt(report.exact_value);
    case SDAReport::Kind::kUnbounded: return std::nullopt;
    case SDAReport::Kind::kLowerBound:
      return boost::multiprecision::numerator(report.lower_bound) /
             boost::multiprecision::denominator(report.lower_bound);
  }
  return std::nullopt;
}

Verdict verify_query_lower_bound(const SDAReport& report, double epsilon, double beta, double tau) {
  constexpr double kSlack = 1e-12;
  Verdict v;
  v.tau_le_epsilon = tau <= epsilon + kSlack;
  v.epsilon_sq_le_beta_over_3 = epsilon * epsilon <= beta / 3.0 + kSlack;
  v.norms_ge_beta = to_double(report.min_norm_sq) + kSlack >= beta * beta;
  v.threshold_le_tau_sq = to_double(report.gamma) <= tau * tau + kSlack;
  if (!(tau > 0.0)) v.failures.push_back("tau must be positive");
  if (!v.tau_le_epsilon) v.failures.push_back("tau > epsilon");
  if (!v.epsilon_sq_le_beta_over_3) v.failures.push_back("epsilon^2 > beta/3");
  if (!v.norms_ge_beta) v.failures.push_back("some concept has norm below beta");
  if (!v.threshold_le_tau_sq) v.failures.push_back("report threshold exceeds tau^2");
  v.all_hold = v.failures.empty();
  std::ostringstream s;
  if (v.all_hold) {
    s << "any SQ learner reaching squared loss " << epsilon << " with tolerance " << tau
      << " needs at least sda(C, tau^2) >= sda(C, " << to_string(report.gamma) << ") ";
    if (report.kind == SDAReport::Kind::kUnbounded) {
      s << "= unbounded";
    } else if (report.kind == SDAReport::Kind::kExact) {
      s << "= " << report.exact_value;
    } else {
      s << ">= " << to_string(report.lower_bound) << " (~" << to_double(report.lower_bound) << ")";
    }
    s << " queries";
  } else {
    s << "no lower bound: ";
    for (std::size_t i = 0; i < v.failures.size(); ++i) s << (i ? "; " : "") << v.failures[i];
  }
  v.statement = s.str();
  return v;
}

std::string sda_report_to_json(const SDAReport& report) {
  nlohmann::json j;
  j["kind"] = kind_name(report.kind);
  j["gamma"] = rational_to_json(report.gamma);
  j["class_size"] = report.class_size;
  j["kappa"] = rational_to_json(report.kappa);
  j["gamma_pair"] = rational_to_json(report.gamma_pair);
  j["min_norm_sq"] = rational_to_json(report.min_norm_sq);
  if (report.kind == SDAReport::Kind::kExact) {
    j["sda"] = report.exact_value;
    j["supremum"] = rational_to_json(report.supremum);
    j["witness"] = report.witness;
  } else if (report.kind == SDAReport::Kind::kLowerBound) {
    j["lower_bound"] = rational_to_json(report.lower_bound);
  }
  return j.dump();
}

}  // namespace qsq
