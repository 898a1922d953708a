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

#include "qsq/learners.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsq/errors.hpp"
#include "qsq/stabilizer.hpp"

namespace qsq {

namespace {

constexpr char kAxisName[3] = {'X', 'Y', 'Z'};

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// 2^{1-n} tr(E Pi_{i,j}) - 1/2.
double centered_overlap(const Measurement& e, std::size_t qubit, std::size_t axis) {
  if (const auto* p = e.get_if<SingleQubitProjector>()) {
    return p->qubit == qubit ? 0.5 * p->direction[axis] : 0.0;
  }
  const PauliOperator& pauli = e.get_if<PauliMeasurement>()->pauli;
  const double sign = pauli.negative() ? -1.0 : 1.0;
  double t = 0.0;
  if (pauli.is_identity_up_to_sign()) t += sign;
  if (pauli.weight() == 1 && pauli.at(qubit) == static_cast<PauliKind>(axis + 1)) t += sign;
  return 0.5 * t;
}

void require_haar(const StatisticalQueryOracle& oracle) {
  if (oracle.distribution().get_if<HaarSingleQubitProduct>() == nullptr) {
    throw std::invalid_argument("learner needs an oracle over HaarSingleQubitProduct, got " +
                                oracle.distribution().kind_name());
  }
}

double ask(StatisticalQueryOracle& oracle, const SQQuery& q, LearnedHypothesis& h) {
  const double answer = oracle.query(q);
  h.transcript.push_back(TranscriptEntry{h.transcript.size(), q.tau, answer, q.label});
  ++h.queries_used;
  return answer;
}

}  // namespace

SQQuery product_query(std::size_t n, std::size_t qubit, std::size_t axis, double tau) {
  if (qubit >= n || axis >= 3) throw std::out_of_range("product_query index out of range");
  SQQuery q;
  q.tau = tau;
  q.label = std::string("phi_") + std::to_string(qubit) + kAxisName[axis];
  q.phi = [qubit, axis](const Measurement& e, int y) {
    return static_cast<double>(sgn(centered_overlap(e, qubit, axis)) * y);
  };
  HaarMoments m;
  m.a_mean.assign(n, 0.0);
  m.b_dipole.assign(n, BlochVector{});
  // E_u[sgn(u_j) u] = e_j E|u_j| = e_j / 2.
  m.b_dipole[qubit][axis] = 0.5;
  q.haar_moments = std::move(m);
  return q;
}

double product_learner_tolerance(std::size_t n, double epsilon, const ProductLearnerOptions& options) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must be in (0, 1]");
  if (n == 0) throw std::invalid_argument("n must be positive");
  return std::sqrt(epsilon) / ((options.pure_targets ? 4.0 : 2.0) * static_cast<double>(n));
}

LearnedHypothesis learn_product_state(StatisticalQueryOracle& oracle, double epsilon,
                                      const ProductLearnerOptions& options) {
  require_haar(oracle);
  const std::size_t n = oracle.distribution().n();
  const double tau = product_learner_tolerance(n, epsilon, options);
  LearnedHypothesis h{QuantumState::maximally_mixed(n), 0, {}, std::nullopt};
  std::vector<BlochVector> bloch(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      bloch[i][j] = 2.0 * static_cast<double>(n) * ask(oracle, product_query(n, i, j, tau), h);
    }
    const double norm = bloch[i].norm();
    if (options.pure_targets) {
      bloch[i] = norm > 0.0 ? bloch[i].scaled(1.0 / norm) : BlochVector{0.0, 0.0, 1.0};
    } else {
      bloch[i] = project_to_ball(bloch[i]);
    }
  }
  h.state = QuantumState::product(std::move(bloch));
  return h;
}

LearnedHypothesis learn_basis_state(StatisticalQueryOracle& oracle) {
  require_haar(oracle);
  const std::size_t n = oracle.distribution().n();
  const double tau = 1.0 / (4.0 * static_cast<double>(n));
  LearnedHypothesis h{QuantumState::maximally_mixed(n), 0, {}, std::nullopt};
  BitVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double answer = ask(oracle, product_query(n, i, 2, tau), h);
    if (std::abs(answer) < tau * (1.0 - 1e-9)) {
      throw PromiseViolation("answer " + std::to_string(answer) + " for qubit " + std::to_string(i) +
                             " is inside the dead zone; the state is not a basis state");
    }
    if (answer < 0.0) y.set(i, true);
  }
  h.state = QuantumState(StabilizerGroup::basis_state(y));
  h.basis_bits = std::move(y);
  return h;
}

Estimate haar_lemma_monte_carlo(const BlochVector& psi, const BlochVector& rho,
                                const MonteCarloMode& mode) {
  const QuantumState pure = QuantumState::product({psi});
  const QuantumState mixed = QuantumState::product({rho});
  const MeasurementDistribution d(HaarSingleQubitProduct{1});
  return monte_carlo_expectation(d, mode, [&](const Measurement& e) {
    // tr(E sigma) - 1/2 = f_sigma(E) / 2.
    return sgn(f_value(pure, e)) * 0.5 * f_value(mixed, e);
  });
}

}  // namespace qsq
