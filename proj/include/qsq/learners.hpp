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

#include "qsq/hypothesis.hpp"
#include "qsq/sq_oracle.hpp"

namespace qsq {

// phi_{i,j}(E, Y) = sgn(2^{1-n} tr(E Pi_{i,j}) - 1/2) Y with
// Pi_{i,j} = I..I (I + P_j)/2 I..I on qubit i, P_0 = X, P_1 = Y, P_2 = Z.
// Over HaarSingleQubitProduct(n) its clean expectation is tr(P_j rho_i) / (2n).
SQQuery product_query(std::size_t n, std::size_t qubit, std::size_t axis, double tau);

struct ProductLearnerOptions {
  // Normalize every estimate onto the Bloch sphere (targets known to be pure)
  // instead of only projecting estimates that leave the ball. Halves the
  // tolerance to pay for the radial step.
  bool pure_targets = false;
};

// Tolerance used per query: sqrt(eps) / (2n), or sqrt(eps) / (4n) for pure targets.
double product_learner_tolerance(std::size_t n, double epsilon, const ProductLearnerOptions& options = {});

// 3n-query learner for product states under HaarSingleQubitProduct(n).
LearnedHypothesis learn_product_state(StatisticalQueryOracle& oracle, double epsilon,
                                      const ProductLearnerOptions& options = {});

// n-query learner for computational basis states at tolerance 1/(4n). Throws
// PromiseViolation when an answer lands strictly inside the dead zone.
LearnedHypothesis learn_basis_state(StatisticalQueryOracle& oracle);

// Monte Carlo estimate of E_u[sgn(tr(E psi) - 1/2) (tr(E rho) - 1/2)] for a
// Haar-random single-qubit projector E, where psi is the pure state with Bloch
// vector `psi` and rho has Bloch vector `rho`. The closed form is tr(P rho)/4
// with P = 2 psi - I, i.e. psi . rho / 4.
Estimate haar_lemma_monte_carlo(const BlochVector& psi, const BlochVector& rho,
                                const MonteCarloMode& mode);

}  // namespace qsq
