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
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qsq/hypothesis.hpp"
#include "qsq/sq_oracle.hpp"

namespace qsq {

// Clean label-dependent expectation from one observed under label-flip rate eta.
double correct_classification(double noisy_answer, double eta);

// (noisy - eta * phi_on_mixed) / (1 - eta).
double correct_depolarizing(double noisy_answer, double phi_on_mixed, double eta);

// tau - 2 eta, the tolerance at which a channel within diamond distance eta of
// the identity can be ignored.
double absorb_bounded_channel(double tau_requested, double eta);

// tau - 2 eta for malicious noise at rate eta.
double malicious_tolerance(double tau_requested, double eta);

// Effect sum_k w_k E_k + identity_weight * I.
struct EffectOperator {
  double identity_weight = 0.0;
  std::vector<std::pair<Measurement, double>> terms;
};

// Heisenberg-picture image of E under a depolarizing channel:
// (1 - eta) E + eta tr(E)/2^n I. Accepts Depolarizing, or a BoundedChannel
// wrapping a DepolarizingChannel; every other model throws std::invalid_argument.
EffectOperator adjoint_measurement(const Measurement& e, const NoiseModel& channel);

// tr(effect * rho).
double effect_expectation(const EffectOperator& effect, const QuantumState& rho);

// phi[I/2^n] = E_{E~D, Y~I/2^n}[phi(E, Y)]. Exact for finite D and for Haar
// queries with moments; otherwise averaged over unlabeled draws from D with
// a Hoeffding sample count for (tau, delta), which needs a non-null rng.
double phi_on_maximally_mixed(const SQQuery& q, const MeasurementDistribution& d, double tau,
                              double delta, Rng* rng);

// Answers clean queries using an oracle whose labels are flipped at rate eta.
// Each query costs two noisy queries at tolerance tau (1 - 2 eta) / 2.
class ClassificationCorrectingOracle final : public StatisticalQueryOracle {
 public:
  ClassificationCorrectingOracle(StatisticalQueryOracle& noisy, double eta);
  double query(const SQQuery& q) override;
  const MeasurementDistribution& distribution() const override { return noisy_.distribution(); }
  std::size_t queries_issued() const override { return issued_; }

 private:
  StatisticalQueryOracle& noisy_;
  double eta_;
  std::size_t issued_ = 0;
};

// Answers clean queries using an oracle for the depolarized state. The noisy
// query is issued at tau (1 - eta_for_tolerance) / 2, and phi[I/2^n] is
// estimated to tau (1 - eta_guess) / (2 eta_guess).
class DepolarizingCorrectingOracle final : public StatisticalQueryOracle {
 public:
  DepolarizingCorrectingOracle(StatisticalQueryOracle& noisy, double eta_guess,
                               double eta_for_tolerance, std::uint64_t unlabeled_seed);
  double query(const SQQuery& q) override;
  const MeasurementDistribution& distribution() const override { return noisy_.distribution(); }
  std::size_t queries_issued() const override { return issued_; }

 private:
  StatisticalQueryOracle& noisy_;
  double eta_guess_;
  double eta_tol_;
  std::uint64_t unlabeled_seed_;
  std::optional<Rng> unlabeled_rng_;
  std::size_t issued_ = 0;
};

// Forwards every query at a fixed reduction of its tolerance: absorb_bounded_channel
// for a bounded channel, malicious_tolerance for malicious noise.
class TighteningOracle final : public StatisticalQueryOracle {
 public:
  enum class Kind { kBoundedChannel, kMalicious };
  TighteningOracle(StatisticalQueryOracle& noisy, Kind kind, double eta);
  double query(const SQQuery& q) override;
  const MeasurementDistribution& distribution() const override { return noisy_.distribution(); }
  std::size_t queries_issued() const override { return issued_; }

 private:
  StatisticalQueryOracle& noisy_;
  Kind kind_;
  double eta_;
  std::size_t issued_ = 0;
};

// Held-out labeled examples. Examples made only of single-qubit projectors are
// additionally summarized per qubit, which makes product-state losses O(n).
class ValidationSet {
 public:
  explicit ValidationSet(std::vector<LabeledExample> examples);

  std::size_t size() const { return examples_.size(); }
  const std::vector<LabeledExample>& examples() const { return examples_; }

  // Mean of (Y - [(1 - eta) f_hyp(E) + eta f_{I/2^n}(E)])^2.
  double depolarized_loss(const QuantumState& hypothesis, double eta) const;

 private:
  struct QubitStats {
    double y_u[3] = {0, 0, 0};
    double uu[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  };
  std::vector<LabeledExample> examples_;
  bool projector_only_ = false;
  std::vector<QubitStats> stats_;
};

// {0, delta, 2 delta, ...} up to eta_upper, with eta_upper itself appended when
// the step does not land on it.
std::vector<double> eta_grid(double eta_upper, double delta);

struct GridSearchResult {
  double best_eta = 0.0;
  LearnedHypothesis hypothesis;
  double best_loss = 0.0;
  std::size_t grid_points = 0;
  std::size_t total_queries = 0;
};

using GridLearner = std::function<LearnedHypothesis(double eta_guess)>;

// Runs the learner at every grid guess and keeps the hypothesis with the
// smallest depolarized validation loss (first one on ties).
GridSearchResult eta_grid_search(const GridLearner& learner, double eta_upper, double delta,
                                 const ValidationSet& validation);

}  // namespace qsq
