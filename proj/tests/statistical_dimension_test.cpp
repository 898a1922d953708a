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

#include <gtest/gtest.h>

#include "json.hpp"

#include "qsq/errors.hpp"

namespace qsq {
namespace {

std::vector<QuantumState> stabilizer_class(std::size_t n) {
  std::vector<QuantumState> out;
  for (auto& g : enumerate_stabilizer_groups(n)) out.emplace_back(std::move(g));
  return out;
}

Rational brute_average(const ConceptClass& c, const std::vector<std::size_t>& subset) {
  Rational sum(0);
  for (auto i : subset) {
    for (auto j : subset) sum += abs(c.inner(i, j));
  }
  return sum / Rational(static_cast<long long>(subset.size() * subset.size()));
}

// Largest integer d in [0, limit] such that every subset of size >= N/d has average
// correlation <= gamma, straight from the definition; nullopt when every d works.
std::optional<std::size_t> brute_sda(const ConceptClass& c, const Rational& gamma, std::size_t limit) {
  const std::size_t n = c.size();
  std::vector<bool> violating_size(n + 1, false);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) subset.push_back(i);
    }
    if (brute_average(c, subset) > gamma) violating_size[subset.size()] = true;
  }
  std::optional<std::size_t> best;
  for (std::size_t d = 0; d <= limit; ++d) {
    bool ok = true;
    for (std::size_t s = 1; s <= n && d > 0; ++s) {
      if (s * d >= n && violating_size[s]) ok = false;
    }
    if (!ok) return best;
    best = d;
  }
  return std::nullopt;
}

TEST(AverageCorrelation, Examples) {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<QuantumState> one{QuantumState(StabilizerGroup::basis_state(BitVector(n)))};
    const auto single = ConceptClass::from_states(one, UniformPauli{n});
    EXPECT_EQ(average_correlation(single), Rational(1, BigInt(1) << n));
  }
  const std::size_t n = 2;
  std::vector<QuantumState> pair{QuantumState(StabilizerGroup::parse("+ZI\n+IZ")),
                                 QuantumState(StabilizerGroup::parse("+ZI\n+IX"))};
  const auto c = ConceptClass::from_states(pair, UniformPauli{n});
  const Rational norm(1, 4);
  EXPECT_EQ(average_correlation(c), Rational(1, 4) * (2 * norm + 2 * norm / 2));
  EXPECT_EQ(c.max_off_diagonal(), Rational(1, 8));
}

TEST(AverageCorrelation, FullSingleQubitClassMatchesDirectSum) {
  const auto states = stabilizer_class(1);
  const auto c = ConceptClass::from_states(states, UniformPauli{1});
  ASSERT_EQ(c.size(), 6u);
  // Each state: norm 1/2, antipode -1/2, four others 1/4 in magnitude... computed directly.
  Rational sum(0);
  for (const auto& a : states) {
    for (const auto& b : states) sum += abs(*inner_product(a, b, UniformPauli{1}, ExactMode{}).exact);
  }
  EXPECT_EQ(average_correlation(c), sum / 36);
  EXPECT_EQ(average_correlation(c, {0, 1, 2}), brute_average(c, {0, 1, 2}));
}

TEST(ConceptClass, GramValidation) {
  EXPECT_THROW(ConceptClass::from_gram({{Rational(1), Rational(0)}}), std::invalid_argument);
  EXPECT_THROW(ConceptClass::from_gram({{Rational(1), Rational(1, 2)}, {Rational(1, 3), Rational(1)}}),
               std::invalid_argument);
  const auto c = ConceptClass::from_gram({{Rational(1, 2), Rational(-1, 8)}, {Rational(-1, 8), Rational(1, 4)}});
  EXPECT_EQ(c.kappa(), Rational(1, 2));
  EXPECT_EQ(c.min_norm_sq(), Rational(1, 4));
  EXPECT_EQ(c.max_off_diagonal(), Rational(1, 8));
  const std::vector<QuantumState> product{QuantumState::product({{0, 0, 1}})};
  EXPECT_THROW(ConceptClass::from_states(product, HaarSingleQubitProduct{1}), ExactUnavailable);
}

TEST(SdaExact, MatchesTheDefinitionOnRandomClasses) {
  Rng rng(4);
  std::uniform_int_distribution<int> entry(-8, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      g[i][i] = Rational(4 + rng() % 5, 8);
      for (std::size_t j = i + 1; j < n; ++j) g[i][j] = g[j][i] = Rational(entry(rng), 16);
    }
    const auto c = ConceptClass::from_gram(g);
    for (const Rational& gamma : {Rational(1, 16), Rational(3, 16), Rational(5, 16), Rational(1)}) {
      const auto r = sda_exact(c, gamma);
      const auto want = brute_sda(c, gamma, 4 * n + 4);
      if (!want) {
        EXPECT_EQ(r.kind, SDAReport::Kind::kUnbounded);
        continue;
      }
      ASSERT_EQ(r.kind, SDAReport::Kind::kExact);
      EXPECT_EQ(r.exact_value, *want);
      EXPECT_GT(brute_average(c, r.witness), gamma);
      EXPECT_EQ(r.supremum, Rational(static_cast<long long>(n)) /
                                Rational(static_cast<long long>(r.witness.size())));
    }
  }
}

TEST(SdaExact, SingleQubitStabilizerClass) {
  const auto c = ConceptClass::from_states(stabilizer_class(1), UniformPauli{1});
  for (const Rational& gamma : {Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 2)}) {
    const auto r = sda_exact(c, gamma);
    const auto want = brute_sda(c, gamma, 64);
    if (want) {
      EXPECT_EQ(r.kind, SDAReport::Kind::kExact);
      EXPECT_EQ(r.exact_value, *want);
    } else {
      EXPECT_EQ(r.kind, SDAReport::Kind::kUnbounded);
    }
  }
  // Threshold below every norm: singletons violate, so d = 0.
  EXPECT_EQ(sda_exact(c, Rational(1, 16)).exact_value, 0u);
}

TEST(SdaExact, OrthogonalClassBelowItsNorm) {
  const std::size_t n = 5;
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = Rational(1, 2);
  const auto c = ConceptClass::from_gram(g);
  // A subset of size s has average (1/2)/s, which exceeds 1/5 only for s <= 2.
  const auto r = sda_exact(c, Rational(1, 5));
  EXPECT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(r.exact_value, 2u);
  EXPECT_EQ(r.supremum, Rational(5, 2));
  EXPECT_EQ(sda_exact(c, Rational(1, 2)).kind, SDAReport::Kind::kUnbounded);
}

TEST(SdaExact, FallsBackAboveTheBudget) {
  const auto c = ConceptClass::from_states(stabilizer_class(2), UniformPauli{2});
  const auto r = sda_exact(c, Rational(1, 4));
  EXPECT_EQ(r.kind, SDAReport::Kind::kLowerBound);
  EXPECT_EQ(r.lower_bound, Rational(60));
  EXPECT_THROW(sda_exact(c, Rational(1, 8)), BudgetExceeded);
}

TEST(SdaBound, Examples) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto c = ConceptClass::from_states(stabilizer_class(n), UniformPauli{n});
    const Rational half(1, BigInt(2) << n);
    const Rational kappa(1, BigInt(1) << n);
    const auto r = sda_bound(c, half, kappa, half);
    EXPECT_EQ(r.lower_bound, Rational(static_cast<long long>(c.size())));
    EXPECT_EQ(r.gamma, kappa);
    EXPECT_EQ(sda_integer_value(r), BigInt(c.size()));
    const auto tiny = sda_bound(c, half, kappa, half / 1000000);
    EXPECT_LT(tiny.lower_bound, Rational(1));
    EXPECT_THROW(sda_bound(c, half / 2, kappa, half), ContractViolation);
    EXPECT_THROW(sda_bound(c, half, kappa / 2, half), std::invalid_argument);
    EXPECT_THROW(sda_bound(c, half, kappa, Rational(0)), std::invalid_argument);
  }
}

TEST(SdaBound, NeverExceedsTheExactValue) {
  const auto c = ConceptClass::from_states(stabilizer_class(1), UniformPauli{1});
  const Rational pair = c.max_off_diagonal();
  for (int k = 1; k <= 16; ++k) {
    const Rational gamma_prime(k, 32);
    const auto bound = sda_bound(c, pair, c.kappa(), gamma_prime);
    const auto exact = sda_exact(c, bound.gamma);
    if (exact.kind == SDAReport::Kind::kUnbounded) continue;
    EXPECT_LE(bound.lower_bound, exact.supremum) << "k=" << k;
    EXPECT_LE(*sda_integer_value(bound), BigInt(exact.exact_value)) << "k=" << k;
  }
}

TEST(Verdict, Examples) {
  const std::size_t n = 2;
  const auto c = ConceptClass::from_states(stabilizer_class(n), UniformPauli{n});
  // ||f||^2 = 1/4, so beta = 1/2; tau = eps = 0.408 keeps eps^2 <= beta/3.
  const double beta = 0.5;
  const Rational tau_sq(408 * 408, 1000000);
  const double tau = 0.408;
  const auto r = sda_bound(c, Rational(1, 8), Rational(1, 4), tau_sq - Rational(1, 8));
  const auto ok = verify_query_lower_bound(r, tau, beta, tau);
  EXPECT_TRUE(ok.all_hold) << ok.statement;
  EXPECT_GE(*sda_integer_value(r), BigInt(19));
  EXPECT_NE(ok.statement.find("needs at least"), std::string::npos);

  const auto big_tau = verify_query_lower_bound(r, 0.4, beta, 0.41);
  EXPECT_FALSE(big_tau.tau_le_epsilon);
  EXPECT_FALSE(big_tau.all_hold);

  const auto big_eps = verify_query_lower_bound(r, 0.45, beta, tau);
  EXPECT_FALSE(big_eps.epsilon_sq_le_beta_over_3);
  EXPECT_TRUE(big_eps.tau_le_epsilon);

  const auto small_tau = verify_query_lower_bound(r, tau, beta, 0.3);
  EXPECT_FALSE(small_tau.threshold_le_tau_sq);

  const auto weak_norms = verify_query_lower_bound(r, 0.4, 0.6, 0.4);
  EXPECT_FALSE(weak_norms.norms_ge_beta);
  EXPECT_NE(weak_norms.statement.find("no lower bound"), std::string::npos);

  // The threshold 1/4 of the headline bound is out of reach: tau^2 >= 1/4 forces eps^2 > beta/3.
  const auto headline = sda_bound(c, Rational(1, 8), Rational(1, 4), Rational(1, 8));
  EXPECT_FALSE(verify_query_lower_bound(headline, 0.5, beta, 0.5).all_hold);
}

TEST(ParityClass, DistinctParitiesAreOrthogonal) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<QuantumState> states;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
      states.emplace_back(StabilizerGroup::basis_state(BitVector::from_uint(n, y)));
    }
    const auto c = ConceptClass::from_states(states, UniformParity{n});
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c.inner(i, j), Rational(i == j ? 1 : 0));
    }
  }
}

TEST(Json, RationalsAreExact) {
  const auto c = ConceptClass::from_states(stabilizer_class(1), UniformPauli{1});
  const auto j = nlohmann::json::parse(sda_report_to_json(sda_bound(c, Rational(1, 4), Rational(1, 2), Rational(1, 4))));
  EXPECT_EQ(j.at("kind"), "lower_bound");
  EXPECT_EQ(j.at("lower_bound").at("num"), 6);
  EXPECT_EQ(j.at("lower_bound").at("den"), 1);
  EXPECT_EQ(j.at("gamma").at("num"), 1);
  EXPECT_EQ(j.at("gamma").at("den"), 2);
}

}  // namespace
}  // namespace qsq
