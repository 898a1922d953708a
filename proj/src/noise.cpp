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

#include "qsq/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsq/errors.hpp"

namespace qsq {

double correct_classification(double noisy_answer, double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) throw std::invalid_argument("classification eta must be in [0, 1/2)");
  return noisy_answer / (1.0 - 2.0 * eta);
}

double correct_depolarizing(double noisy_answer, double phi_on_mixed, double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("depolarizing eta must be in [0, 1)");
  return (noisy_answer - eta * phi_on_mixed) / (1.0 - eta);
}

double absorb_bounded_channel(double tau_requested, double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("diamond bound must be >= 0");
  if (!(tau_requested > 2.0 * eta)) {
    throw std::invalid_argument("tolerance " + std::to_string(tau_requested) +
                                " does not exceed twice the channel bound " + std::to_string(eta));
  }
  return tau_requested - 2.0 * eta;
}

double malicious_tolerance(double tau_requested, double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("malicious eta must be >= 0");
  if (!(tau_requested > 2.0 * eta)) {
    throw std::invalid_argument("malicious rate too large for tolerance " +
                                std::to_string(tau_requested));
  }
  return tau_requested - 2.0 * eta;
}

EffectOperator adjoint_measurement(const Measurement& e, const NoiseModel& channel) {
  double eta = 0.0;
  if (const auto* d = std::get_if<Depolarizing>(&channel)) {
    eta = d->eta;
  } else if (const auto* b = std::get_if<BoundedChannel>(&channel)) {
    const auto* dep = dynamic_cast<const DepolarizingChannel*>(b->channel.get());
    if (dep == nullptr) throw std::invalid_argument("no closed-form adjoint for this channel");
    eta = dep->eta();
  } else {
    throw std::invalid_argument("adjoint_measurement supports depolarizing channels only");
  }
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("depolarizing eta must be in [0, 1)");
  EffectOperator out;
  out.identity_weight = eta * e.normalized_trace();
  out.terms.emplace_back(e, 1.0 - eta);
  return out;
}

double effect_expectation(const EffectOperator& effect, const QuantumState& rho) {
  double acc = effect.identity_weight;
  for (const auto& [e, w] : effect.terms) acc += w * 0.5 * (1.0 + f_value(rho, e));
  return acc;
}

double phi_on_maximally_mixed(const SQQuery& q, const MeasurementDistribution& d, double tau,
                              double delta, Rng* rng) {
  auto point = [&](const Measurement& e) {
    const double f = 2.0 * e.normalized_trace() - 1.0;
    const double a = 0.5 * (q.phi(e, 1) + q.phi(e, -1));
    const double b = 0.5 * (q.phi(e, 1) - q.phi(e, -1));
    return a + b * f;
  };
  if (d.is_finite()) {
    double acc = 0.0;
    d.for_each_atom([&](const Measurement& e, const Rational& w) { acc += to_double(w) * point(e); });
    return acc;
  }
  if (q.haar_moments) {
    // Single-qubit projectors have f_{I/2^n} = 0, leaving the a-part.
    double acc = 0.0;
    for (double v : q.haar_moments->a_mean) acc += v;
    return acc / static_cast<double>(d.n());
  }
  if (rng == nullptr) throw std::invalid_argument("sampling phi[I/2^n] needs a random source");
  const std::size_t m = hoeffding_sample_count(tau, delta);
  double acc = 0.0;
  for (std::size_t s = 0; s < m; ++s) acc += point(d.sample(*rng));
  return acc / static_cast<double>(m);
}

// ------------------------------------------------------------------ wrappers

ClassificationCorrectingOracle::ClassificationCorrectingOracle(StatisticalQueryOracle& noisy,
                                                               double eta)
    : noisy_(noisy), eta_(eta) {
  if (!(eta >= 0.0 && eta < 0.5)) throw std::invalid_argument("classification eta must be in [0, 1/2)");
}

double ClassificationCorrectingOracle::query(const SQQuery& q) {
  const double inner_tau = q.tau * (1.0 - 2.0 * eta_) / 2.0;
  SQQuery a = label_independent_part(q);
  SQQuery b = label_dependent_part(q);
  a.tau = inner_tau;
  b.tau = inner_tau;
  const double a_ans = noisy_.query(a);
  const double b_ans = noisy_.query(b);
  ++issued_;
  return a_ans + correct_classification(b_ans, eta_);
}

DepolarizingCorrectingOracle::DepolarizingCorrectingOracle(StatisticalQueryOracle& noisy,
                                                           double eta_guess,
                                                           double eta_for_tolerance,
                                                           std::uint64_t unlabeled_seed)
    : noisy_(noisy),
      eta_guess_(eta_guess),
      eta_tol_(eta_for_tolerance),
      unlabeled_seed_(unlabeled_seed) {
  if (!(eta_guess >= 0.0 && eta_guess < 1.0) || !(eta_for_tolerance >= 0.0 && eta_for_tolerance < 1.0)) {
    throw std::invalid_argument("depolarizing eta must be in [0, 1)");
  }
}

double DepolarizingCorrectingOracle::query(const SQQuery& q) {
  SQQuery inner = q;
  inner.tau = q.tau * (1.0 - eta_tol_) / 2.0;
  const double noisy = noisy_.query(inner);
  double mixed = 0.0;
  if (eta_guess_ > 0.0) {
    const double tau_mixed = q.tau * (1.0 - eta_guess_) / (2.0 * eta_guess_);
    const MeasurementDistribution& d = noisy_.distribution();
    const bool sampled = !d.is_finite() && !q.haar_moments;
    if (sampled && !unlabeled_rng_) unlabeled_rng_ = substream(unlabeled_seed_, Stream::kUnlabeled);
    mixed = phi_on_maximally_mixed(q, d, tau_mixed, 0.01, sampled ? &*unlabeled_rng_ : nullptr);
  }
  ++issued_;
  return correct_depolarizing(noisy, mixed, eta_guess_);
}

TighteningOracle::TighteningOracle(StatisticalQueryOracle& noisy, Kind kind, double eta)
    : noisy_(noisy), kind_(kind), eta_(eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("noise rate must be >= 0");
}

double TighteningOracle::query(const SQQuery& q) {
  SQQuery inner = q;
  inner.tau = kind_ == Kind::kBoundedChannel ? absorb_bounded_channel(q.tau, eta_)
                                             : malicious_tolerance(q.tau, eta_);
  const double ans = noisy_.query(inner);
  ++issued_;
  return ans;
}

// ------------------------------------------------------------- grid search

ValidationSet::ValidationSet(std::vector<LabeledExample> examples) : examples_(std::move(examples)) {
  if (examples_.empty()) throw std::invalid_argument("empty validation set");
  projector_only_ = true;
  std::size_t n = examples_.front().measurement.n();
  for (const auto& ex : examples_) {
    if (ex.measurement.get_if<SingleQubitProjector>() == nullptr) {
      projector_only_ = false;
      break;
    }
  }
  if (!projector_only_) return;
  stats_.assign(n, QubitStats{});
  for (const auto& ex : examples_) {
    const auto& p = *ex.measurement.get_if<SingleQubitProjector>();
    auto& s = stats_.at(p.qubit);
    for (int a = 0; a < 3; ++a) {
      s.y_u[a] += ex.label * p.direction[a];
      for (int b = 0; b < 3; ++b) s.uu[a][b] += p.direction[a] * p.direction[b];
    }
  }
}

double ValidationSet::depolarized_loss(const QuantumState& hypothesis, double eta) const {
  const double m = static_cast<double>(examples_.size());
  const auto* prod = hypothesis.get_if<ProductState>();
  if (projector_only_ && prod != nullptr && prod->qubits.size() == stats_.size()) {
    // For a projector (k, u): f_hyp = u . r_k and f_{I/2^n} = 0.
    const double c = 1.0 - eta;
    double cross = 0.0;
    double square = 0.0;
    for (std::size_t k = 0; k < stats_.size(); ++k) {
      const BlochVector& r = prod->qubits[k];
      const auto& s = stats_[k];
      for (int a = 0; a < 3; ++a) {
        cross += r[a] * s.y_u[a];
        for (int b = 0; b < 3; ++b) square += r[a] * s.uu[a][b] * r[b];
      }
    }
    return 1.0 - 2.0 * c * cross / m + c * c * square / m;
  }
  double acc = 0.0;
  for (const auto& ex : examples_) {
    const double g = (1.0 - eta) * f_value(hypothesis, ex.measurement) +
                     eta * (2.0 * ex.measurement.normalized_trace() - 1.0);
    const double r = ex.label - g;
    acc += r * r;
  }
  return acc / m;
}

std::vector<double> eta_grid(double eta_upper, double delta) {
  if (!(eta_upper >= 0.0 && eta_upper < 1.0)) throw std::invalid_argument("eta_upper must be in [0, 1)");
  if (!(delta > 0.0)) throw std::invalid_argument("grid step must be > 0");
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double g = static_cast<double>(k) * delta;
    if (g > eta_upper * (1.0 + 1e-12)) break;
    grid.push_back(std::min(g, eta_upper));
  }
  if (grid.empty()) throw std::invalid_argument("empty eta grid");
  if (grid.back() < eta_upper) grid.push_back(eta_upper);
  return grid;
}

GridSearchResult eta_grid_search(const GridLearner& learner, double eta_upper, double delta,
                                 const ValidationSet& validation) {
  const std::vector<double> grid = eta_grid(eta_upper, delta);
  std::optional<GridSearchResult> best;
  std::size_t total = 0;
  for (double guess : grid) {
    LearnedHypothesis h = learner(guess);
    total += h.queries_used;
    const double loss = validation.depolarized_loss(h.state, guess);
    if (!best || loss < best->best_loss) {
      best = GridSearchResult{guess, std::move(h), loss, 0, 0};
    }
  }
  best->grid_points = grid.size();
  best->total_queries = total;
  return std::move(*best);
}

}  // namespace qsq
