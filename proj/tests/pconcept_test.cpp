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

#include "qsq/pconcept.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"
#include "qsq/errors.hpp"

namespace qsq {
namespace {

using testing::dense;
using testing::dense_f;

QuantumState stab(const char* text) { return QuantumState(StabilizerGroup::parse(text)); }

// Average of g over all 2 * 4^n Pauli measurements, evaluated with dense matrices.
template <class G>
double dense_uniform_pauli_mean(std::size_t n, G g) {
  double acc = 0.0;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    for (bool neg : {false, true}) {
      const auto p = PauliOperator::from_index(n, idx, neg);
      const testing::Mat e = 0.5 * (testing::identity(n) + dense(p));
      acc += g(e);
    }
  }
  return acc / static_cast<double>(2 * count);
}

TEST(FValue, Examples) {
  EXPECT_EQ(f_value(stab("+Z"), Measurement::pauli(PauliOperator::parse("Z"))), 1.0);
  const auto mixed = QuantumState::maximally_mixed(2);
  EXPECT_EQ(f_value(mixed, Measurement::pauli(PauliOperator::parse("XZ"))), 0.0);
  EXPECT_EQ(f_value(mixed, Measurement::pauli(PauliOperator::parse("-IY"))), 0.0);
  EXPECT_EQ(f_value(mixed, Measurement::pauli(PauliOperator::parse("II"))), 1.0);
  EXPECT_EQ(f_value(mixed, Measurement::pauli(PauliOperator::parse("-II"))), -1.0);
  const auto product = QuantumState::product({{0, 0, 1}, {1, 0, 0}});
  EXPECT_EQ(f_value(product, Measurement::projector(2, 0, {0, 0, 1})), 1.0);
  EXPECT_EQ(f_value(product, Measurement::projector(2, 1, {1, 0, 0})), 1.0);
  EXPECT_THROW(f_value(stab("+Z"), Measurement::pauli(PauliOperator::parse("ZZ"))),
               DimensionMismatch);
}

TEST(FValue, ExactValuesForStabilizerPauliPairs) {
  const auto rho = stab("+XX\n+ZZ");
  EXPECT_EQ(f_value_exact(rho, Measurement::pauli(PauliOperator::parse("-YY"))), Rational(1));
  EXPECT_EQ(f_value_exact(rho, Measurement::pauli(PauliOperator::parse("XI"))), Rational(0));
  EXPECT_FALSE(f_value_exact(rho, Measurement::projector(2, 0, {0, 0, 1})).has_value());
}

TEST(FValue, MatchesDenseForRandomStates) {
  Rng rng(11);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_product_state(n, trial % 2 == 0, rng);
      const testing::Mat d = dense(rho);
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (2 * n)); ++idx) {
        const auto e = Measurement::pauli(PauliOperator::from_index(n, idx, idx % 3 == 0));
        EXPECT_NEAR(f_value(rho, e), dense_f(d, dense(e)), 1e-12);
      }
      for (std::size_t q = 0; q < n; ++q) {
        const auto e = Measurement::projector(n, q, sample_haar_bloch(rng));
        EXPECT_NEAR(f_value(rho, e), dense_f(d, dense(e)), 1e-12);
      }
    }
  }
}

TEST(FValue, ZeroProductEqualsMaximallyMixed) {
  Rng rng(3);
  const auto zero = QuantumState::product(std::vector<BlochVector>(3));
  const auto mixed = QuantumState::maximally_mixed(3);
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    const auto e = Measurement::pauli(PauliOperator::from_index(3, idx, false));
    EXPECT_EQ(f_value(zero, e), f_value(mixed, e));
  }
  for (int k = 0; k < 20; ++k) {
    const auto e = Measurement::projector(3, k % 3, sample_haar_bloch(rng));
    EXPECT_EQ(f_value(zero, e), f_value(mixed, e));
  }
}

TEST(States, RejectInvalidInput) {
  EXPECT_THROW(QuantumState::product({{1, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(QuantumState::product({}), std::invalid_argument);
  EXPECT_THROW(QuantumState::maximally_mixed(0), std::invalid_argument);
  EXPECT_THROW(Measurement::projector(2, 0, {0.5, 0, 0}), std::invalid_argument);
  EXPECT_THROW(Measurement::projector(2, 2, {0, 0, 1}), std::out_of_range);
  EXPECT_THROW(MeasurementDistribution(FiniteWeighted{{{Measurement::projector(1, 0, {0, 0, 1}), 0.4}}}),
               std::invalid_argument);
}

TEST(SampleOutcome, Examples) {
  Rng rng(1);
  const auto zero = stab("+Z");
  const auto plus_z = Measurement::pauli(PauliOperator::parse("Z"));
  const auto minus_z = Measurement::pauli(PauliOperator::parse("-Z"));
  const auto x = Measurement::pauli(PauliOperator::parse("X"));
  long sum = 0;
  for (int k = 0; k < 1000; ++k) {
    EXPECT_EQ(sample_outcome(zero, plus_z, rng), 1);
    EXPECT_EQ(sample_outcome(zero, minus_z, rng), -1);
  }
  for (int k = 0; k < 100000; ++k) sum += sample_outcome(zero, x, rng);
  EXPECT_LT(std::abs(static_cast<double>(sum) / 100000.0), 0.02);
}

TEST(InnerProduct, Examples) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const UniformPauli d{n};
    BitVector zeros(n);
    const auto rho = QuantumState(StabilizerGroup::basis_state(zeros));
    std::string plus_text;
    for (std::size_t i = 0; i < n; ++i) {
      plus_text += "+" + std::string(i, 'I') + (i + 1 == n ? "X" : "Z") + std::string(n - i - 1, 'I');
      plus_text += "\n";
    }
    const auto plus = QuantumState(StabilizerGroup::parse(plus_text));
    const Rational norm(1, BigInt(1) << n);
    EXPECT_EQ(*inner_product(rho, rho, d, ExactMode{}).exact, norm);
    EXPECT_EQ(*inner_product(rho, plus, d, ExactMode{}).exact, norm / 2);
    EXPECT_EQ(*inner_product(rho, QuantumState::maximally_mixed(n), d, ExactMode{}).exact,
              norm * norm);
    EXPECT_EQ(*squared_loss(rho, QuantumState::maximally_mixed(n), d, ExactMode{}).exact,
              norm - norm * norm);
    EXPECT_EQ(*squared_loss(rho, rho, d, ExactMode{}).exact, Rational(0));
  }
}

TEST(InnerProduct, UniformPauliMatchesDenseOracle) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto all = enumerate_stabilizer_groups(n);
    for (std::size_t i = 0; i < all.size(); i += 3) {
      for (std::size_t j = 0; j < all.size(); j += 5) {
        const testing::Mat a = dense(all[i]);
        const testing::Mat b = dense(all[j]);
        const double want = dense_uniform_pauli_mean(
            n, [&](const testing::Mat& e) { return dense_f(a, e) * dense_f(b, e); });
        const auto got = inner_product(QuantumState(all[i]), QuantumState(all[j]), UniformPauli{n},
                                       ExactMode{});
        ASSERT_TRUE(got.exact.has_value());
        EXPECT_NEAR(to_double(*got.exact), want, 1e-12);
      }
    }
  }
}

TEST(InnerProduct, UniformParityIsFiniteExact) {
  const auto rho = QuantumState(StabilizerGroup::basis_state(BitVector::from_string("10")));
  const auto got = inner_product(rho, rho, UniformParity{2}, ExactMode{});
  ASSERT_TRUE(got.exact.has_value());
  EXPECT_EQ(*got.exact, Rational(1));
}

TEST(InnerProduct, ExactUnavailableWithoutClosedForm) {
  const auto p = QuantumState::product({{0.3, 0, 0}});
  const MeasurementDistribution d(
      FiniteWeighted{{{Measurement::projector(1, 0, {0, 0, 1}), 1.0}}});
  const auto v = inner_product(p, p, d, ExactMode{});
  EXPECT_FALSE(v.exact.has_value());
  EXPECT_DOUBLE_EQ(v.value, 0.0);
}

TEST(InnerProduct, MonteCarloAgreesWithExact) {
  Rng rng(21);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = enumerate_stabilizer_groups(n);
    for (int trial = 0; trial < 4; ++trial) {
      const auto a = QuantumState(all[rng() % all.size()]);
      const auto b = QuantumState(all[rng() % all.size()]);
      const double exact = to_double(*inner_product(a, b, UniformPauli{n}, ExactMode{}).exact);
      const auto mc = inner_product(a, b, UniformPauli{n},
                                    MonteCarloMode{100000, static_cast<std::uint64_t>(trial), 2});
      EXPECT_EQ(mc.samples, 100000u);
      EXPECT_LE(std::abs(mc.value - exact), 4.0 * mc.std_error + 1e-12)
          << "n=" << n << " exact=" << exact << " mc=" << mc.value;
    }
  }
}

TEST(InnerProduct, MonteCarloIndependentOfJobCount) {
  const auto a = stab("+ZI\n+IX");
  const auto b = stab("+XX\n+ZZ");
  const auto one = inner_product(a, b, UniformPauli{2}, MonteCarloMode{30000, 9, 1});
  const auto four = inner_product(a, b, UniformPauli{2}, MonteCarloMode{30000, 9, 4});
  EXPECT_EQ(one.value, four.value);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(SquaredLoss, ProductClosedFormSingleQubitDifference) {
  const std::size_t n = 3;
  std::vector<BlochVector> a{{0, 0, 1}, {0.2, 0.1, 0}, {0, 0, -1}};
  std::vector<BlochVector> b = a;
  b[0] = {0.6, 0, 0.8};
  const double d = (a[0] - b[0]).norm();
  const auto loss = squared_loss(QuantumState::product(a), QuantumState::product(b),
                                 HaarSingleQubitProduct{n}, ExactMode{});
  EXPECT_NEAR(loss.value, 4.0 / (3.0 * n) * (d / 2) * (d / 2), 1e-15);
}

TEST(SquaredLoss, ClosedFormAgreesWithMonteCarlo) {
  Rng rng(8);
  for (std::size_t n : {1u, 2u, 4u}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = random_product_state(n, false, rng);
      const auto b = random_product_state(n, trial == 0, rng);
      const double exact = squared_loss(a, b, HaarSingleQubitProduct{n}, ExactMode{}).value;
      const auto mc = squared_loss(a, b, HaarSingleQubitProduct{n},
                                   MonteCarloMode{200000, 100u + trial, 2});
      EXPECT_LE(std::abs(mc.value - exact), 4.0 * mc.std_error + 1e-12);
      const double inner = inner_product(a, b, HaarSingleQubitProduct{n}, ExactMode{}).value;
      const auto inner_mc = inner_product(a, b, HaarSingleQubitProduct{n},
                                          MonteCarloMode{200000, 200u + trial, 2});
      EXPECT_LE(std::abs(inner_mc.value - inner), 4.0 * inner_mc.std_error + 1e-12);
    }
  }
}

TEST(HaarSampling, IsotropicOnTheSphere) {
  Rng rng(77);
  const int count = 200000;
  double mean[3] = {0, 0, 0};
  double second[3] = {0, 0, 0};
  double norm_sq = 0.0;
  for (int k = 0; k < count; ++k) {
    const auto v = sample_haar_bloch(rng);
    for (std::size_t a = 0; a < 3; ++a) {
      mean[a] += v[a];
      second[a] += v[a] * v[a];
    }
    norm_sq += v.dot(v);
  }
  // Each coordinate has variance 1/3.
  const double sigma = std::sqrt(1.0 / 3.0 / count);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_LT(std::abs(mean[a] / count), 4.0 * sigma);
    EXPECT_NEAR(second[a] / count, 1.0 / 3.0, 0.01);
  }
  EXPECT_NEAR(norm_sq / count, 1.0, 1e-12);
}

TEST(BallSampling, StaysInsideTheBall) {
  Rng rng(4);
  double mean_norm_cubed = 0.0;
  for (int k = 0; k < 50000; ++k) {
    const auto v = sample_ball_bloch(rng);
    ASSERT_LE(v.norm(), 1.0 + kBlochSlack);
    mean_norm_cubed += std::pow(v.norm(), 3);
  }
  // |v|^3 is uniform on [0, 1] for the uniform ball measure.
  EXPECT_NEAR(mean_norm_cubed / 50000, 0.5, 0.01);
}

TEST(Parity, TraceAgainstBasisStatesIsTheInnerProductBit) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const auto e = parity_measurement(BitVector::from_uint(n, x));
      const testing::Mat de = dense(e);
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
        const auto basis = QuantumState(StabilizerGroup::basis_state(BitVector::from_uint(n, y)));
        const int bit = std::popcount(x & y) % 2;
        // tr(E_x |y><y|) = x.y mod 2, up to the label convention on the projector.
        const double tr = (de * dense(basis)).trace().real();
        EXPECT_NEAR(tr, bit == 0 ? 1.0 : 0.0, 1e-12);
        EXPECT_EQ(f_value(basis, e), bit == 0 ? 1.0 : -1.0);
      }
      EXPECT_EQ(decode_parity_measurement(e), BitVector::from_uint(n, x));
    }
  }
  EXPECT_FALSE(decode_parity_measurement(Measurement::pauli(PauliOperator::parse("XZ"))));
}

TEST(Distribution, SupportAndAtoms) {
  const MeasurementDistribution pauli(UniformPauli{2});
  EXPECT_EQ(pauli.support_size(), 32u);
  Rational total(0);
  std::size_t atoms = 0;
  pauli.for_each_atom([&](const Measurement&, const Rational& w) {
    total += w;
    ++atoms;
  });
  EXPECT_EQ(total, Rational(1));
  EXPECT_EQ(atoms, 32u);
  const MeasurementDistribution parity(UniformParity{3});
  EXPECT_EQ(parity.support_size(), 8u);
  const MeasurementDistribution haar(HaarSingleQubitProduct{2});
  EXPECT_FALSE(haar.is_finite());
  EXPECT_THROW(haar.for_each_atom([](const Measurement&, const Rational&) {}), ExactUnavailable);
}

TEST(Distribution, SamplingIsSeeded) {
  const MeasurementDistribution d(HaarSingleQubitProduct{3});
  Rng a(5), b(5);
  for (int k = 0; k < 20; ++k) {
    const auto ea = d.sample(a);
    const auto eb = d.sample(b);
    EXPECT_EQ(ea.describe(), eb.describe());
  }
}

}  // namespace
}  // namespace qsq
