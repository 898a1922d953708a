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

#include "qsq/sq_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "qsq/errors.hpp"

namespace qsq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr int kProbeCount = 8;
constexpr double kBoundSlack = 1e-12;

double a_part(const SQQuery& q, const Measurement& e) { return 0.5 * (q.phi(e, 1) + q.phi(e, -1)); }
double b_part(const SQQuery& q, const Measurement& e) { return 0.5 * (q.phi(e, 1) - q.phi(e, -1)); }

}  // namespace

SQQuery label_independent_part(const SQQuery& q) {
  SQQuery out;
  out.tau = q.tau;
  out.label = q.label + "/a";
  auto phi = q.phi;
  out.phi = [phi](const Measurement& e, int) { return 0.5 * (phi(e, 1) + phi(e, -1)); };
  if (q.haar_moments) {
    HaarMoments m = *q.haar_moments;
    std::fill(m.b_dipole.begin(), m.b_dipole.end(), BlochVector{});
    out.haar_moments = std::move(m);
  }
  return out;
}

SQQuery label_dependent_part(const SQQuery& q) {
  SQQuery out;
  out.tau = q.tau;
  out.label = q.label + "/b";
  auto phi = q.phi;
  out.phi = [phi](const Measurement& e, int y) { return y * 0.5 * (phi(e, 1) - phi(e, -1)); };
  if (q.haar_moments) {
    HaarMoments m = *q.haar_moments;
    std::fill(m.a_mean.begin(), m.a_mean.end(), 0.0);
    out.haar_moments = std::move(m);
  }
  return out;
}

DepolarizingChannel::DepolarizingChannel(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta < 1.0)) throw std::invalid_argument("depolarizing eta must be in [0, 1)");
}

double DepolarizingChannel::f_value(const QuantumState& rho, const Measurement& e) const {
  // f_{Lambda(rho)} = (1 - eta) f_rho + eta f_{I/2^n}, f_{I/2^n}(E) = 2 tr(E)/2^n - 1.
  return (1.0 - eta_) * qsq::f_value(rho, e) + eta_ * (2.0 * e.normalized_trace() - 1.0);
}

BlochVector DepolarizingChannel::reduced_bloch(const QuantumState& rho, std::size_t qubit) const {
  return rho.reduced_bloch(qubit).scaled(1.0 - eta_);
}

void validate_noise(const NoiseModel& noise) {
  std::visit(
      Overloaded{[](const NoNoise&) {},
                 [](const Classification& c) {
                   if (!(c.eta >= 0.0 && c.eta < 0.5)) {
                     throw std::invalid_argument("classification eta must be in [0, 1/2)");
                   }
                 },
                 [](const Malicious& m) {
                   if (!(m.eta >= 0.0 && m.eta < 1.0)) {
                     throw std::invalid_argument("malicious eta must be in [0, 1)");
                   }
                   if (m.corruption) {
                     double total = 0.0;
                     for (const auto& [ex, w] : *m.corruption) {
                       if (!(w >= 0.0)) throw std::invalid_argument("negative corruption weight");
                       if (ex.label != 1 && ex.label != -1) {
                         throw std::invalid_argument("corruption labels must be +/-1");
                       }
                       total += w;
                     }
                     if (std::abs(total - 1.0) > 1e-12) {
                       throw std::invalid_argument("corruption weights must sum to 1");
                     }
                   }
                 },
                 [](const Depolarizing& d) {
                   if (!(d.eta >= 0.0 && d.eta < 1.0)) {
                     throw std::invalid_argument("depolarizing eta must be in [0, 1)");
                   }
                 },
                 [](const BoundedChannel& b) {
                   if (!b.channel) throw std::invalid_argument("bounded channel needs a channel");
                   if (!(b.eta >= 0.0)) throw std::invalid_argument("diamond bound must be >= 0");
                   if (b.channel->trace_bound() > b.eta + kBoundSlack) {
                     throw std::invalid_argument("channel " + b.channel->name() +
                                                 " exceeds its declared diamond bound");
                   }
                 }},
      noise);
}

std::string noise_name(const NoiseModel& noise) {
  return std::visit(Overloaded{[](const NoNoise&) { return std::string("none"); },
                               [](const Classification&) { return std::string("classification"); },
                               [](const Malicious&) { return std::string("malicious"); },
                               [](const Depolarizing&) { return std::string("depolarizing"); },
                               [](const BoundedChannel&) { return std::string("bounded_channel"); }},
                    noise);
}

AdversarialCallback make_alternating_adversary() {
  auto last = std::make_shared<int>(0);
  return AdversarialCallback{[last](double truth, double tau) {
    const int dir = *last == 0 ? (truth > 0.0 ? -1 : 1) : -*last;
    *last = dir;
    return truth + dir * tau;
  }};
}

std::size_t hoeffding_sample_count(double tau, double delta) {
  if (!(tau > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("hoeffding_sample_count needs tau > 0 and delta in (0, 1)");
  }
  return static_cast<std::size_t>(std::ceil(2.0 * std::log(2.0 / delta) / (tau * tau)));
}

void write_transcript_jsonl(std::ostream& out, const std::vector<TranscriptEntry>& entries) {
  for (const auto& e : entries) {
    nlohmann::json line = {{"index", e.index}, {"tau", e.tau}, {"answer", e.answer}};
    if (!e.label.empty()) line["label"] = e.label;
    out << line.dump() << '\n';
  }
}

SQOracle::SQOracle(QuantumState rho, MeasurementDistribution d, OracleConfig config)
    : rho_(std::move(rho)),
      d_(std::move(d)),
      config_(std::move(config)),
      probe_rng_(substream(config_.probe_seed, Stream::kProbe)) {
  require_same_n(rho_.n(), d_.n(), "SQOracle");
  validate_noise(config_.noise);
  if (const auto* r = std::get_if<RandomWithinTau>(&config_.policy)) {
    policy_rng_ = substream(r->seed, Stream::kOracle);
  } else if (const auto* e = std::get_if<EmpiricalFromSamples>(&config_.policy)) {
    policy_rng_ = substream(e->seed, Stream::kOracle);
    if (e->planned_queries == 0) throw std::invalid_argument("planned_queries must be positive");
  } else if (const auto* a = std::get_if<AdversarialCallback>(&config_.policy)) {
    if (!a->respond) throw std::invalid_argument("adversarial policy needs a callback");
  }
}

double SQOracle::noisy_label_mean(const Measurement& e) const {
  return std::visit(Overloaded{[&](const NoNoise&) { return f_value(rho_, e); },
                               [&](const Classification& c) {
                                 return (1.0 - 2.0 * c.eta) * f_value(rho_, e);
                               },
                               [&](const Malicious&) { return f_value(rho_, e); },
                               [&](const Depolarizing& dn) {
                                 return DepolarizingChannel(dn.eta).f_value(rho_, e);
                               },
                               [&](const BoundedChannel& b) { return b.channel->f_value(rho_, e); }},
                    config_.noise);
}

// E_D[a(E) + b(E) g(E)] where g is the noisy label mean before malicious mixing.
double SQOracle::clean_mixture_expectation(const SQQuery& q) const {
  if (d_.is_finite()) {
    double acc = 0.0;
    d_.for_each_atom([&](const Measurement& e, const Rational& w) {
      acc += to_double(w) * (a_part(q, e) + b_part(q, e) * noisy_label_mean(e));
    });
    return acc;
  }
  if (q.haar_moments) {
    const auto& m = *q.haar_moments;
    const std::size_t n = d_.n();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      BlochVector r = std::visit(
          Overloaded{[&](const Classification& c) {
                       return rho_.reduced_bloch(k).scaled(1.0 - 2.0 * c.eta);
                     },
                     [&](const Depolarizing& dn) {
                       return DepolarizingChannel(dn.eta).reduced_bloch(rho_, k);
                     },
                     [&](const BoundedChannel& b) { return b.channel->reduced_bloch(rho_, k); },
                     [&](const auto&) { return rho_.reduced_bloch(k); }},
          config_.noise);
      acc += m.a_mean[k] + m.b_dipole[k].dot(r);
    }
    return acc / static_cast<double>(n);
  }
  if (config_.mc_fallback_samples > 0) {
    Rng rng = substream(config_.probe_seed, Stream::kMonteCarlo, transcript_.size());
    double acc = 0.0;
    for (std::size_t s = 0; s < config_.mc_fallback_samples; ++s) {
      const Measurement e = d_.sample(rng);
      acc += a_part(q, e) + b_part(q, e) * noisy_label_mean(e);
    }
    return acc / static_cast<double>(config_.mc_fallback_samples);
  }
  throw ExactUnavailable("query '" + q.label + "' has no closed form over " + d_.kind_name() +
                         " and Monte Carlo fallback is disabled");
}

double SQOracle::corruption_expectation(const SQQuery& q) const {
  const auto& mal = std::get<Malicious>(config_.noise);
  if (mal.corruption) {
    double acc = 0.0;
    for (const auto& [ex, w] : *mal.corruption) acc += w * q.phi(ex.measurement, ex.label);
    return acc;
  }
  // Default Q: E ~ D with a uniform label, so only the a-part survives.
  if (d_.is_finite()) {
    double acc = 0.0;
    d_.for_each_atom(
        [&](const Measurement& e, const Rational& w) { acc += to_double(w) * a_part(q, e); });
    return acc;
  }
  if (q.haar_moments) {
    double acc = 0.0;
    for (double v : q.haar_moments->a_mean) acc += v;
    return acc / static_cast<double>(d_.n());
  }
  if (config_.mc_fallback_samples > 0) {
    Rng rng = substream(config_.probe_seed, Stream::kMonteCarlo, transcript_.size() + (1ULL << 40));
    double acc = 0.0;
    for (std::size_t s = 0; s < config_.mc_fallback_samples; ++s) acc += a_part(q, d_.sample(rng));
    return acc / static_cast<double>(config_.mc_fallback_samples);
  }
  throw ExactUnavailable("malicious corruption expectation has no closed form");
}

double SQOracle::noisy_expectation(const SQQuery& q) const {
  const double clean = clean_mixture_expectation(q);
  if (const auto* mal = std::get_if<Malicious>(&config_.noise)) {
    return (1.0 - mal->eta) * clean + mal->eta * corruption_expectation(q);
  }
  return clean;
}

LabeledExample SQOracle::draw_example(Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (const auto* mal = std::get_if<Malicious>(&config_.noise)) {
    if (u(rng) < mal->eta) {
      if (mal->corruption) {
        double target = u(rng);
        for (const auto& [ex, w] : *mal->corruption) {
          if (target < w) return ex;
          target -= w;
        }
        return mal->corruption->back().first;
      }
      Measurement e = d_.sample(rng);
      return LabeledExample{std::move(e), (rng() & 1u) ? 1 : -1};
    }
  }
  Measurement e = d_.sample(rng);
  const int y = sample_label(noisy_label_mean(e), rng);
  return LabeledExample{std::move(e), y};
}

std::vector<LabeledExample> SQOracle::draw_examples(std::size_t m, Rng& rng) const {
  std::vector<LabeledExample> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(draw_example(rng));
  return out;
}

void SQOracle::check_query(const SQQuery& q) {
  if (!q.phi) throw std::invalid_argument("query has no function");
  if (!(q.tau > 0.0) || !std::isfinite(q.tau)) throw std::invalid_argument("tolerance must be > 0");
  if (q.haar_moments && (q.haar_moments->a_mean.size() != d_.n() ||
                         q.haar_moments->b_dipole.size() != d_.n())) {
    throw std::invalid_argument("query moments do not match the qubit count");
  }
  // A labelled query is probed once, the first time it is registered.
  if (!q.label.empty() && !probed_labels_.insert(q.label).second) return;
  for (int k = 0; k < kProbeCount; ++k) {
    const Measurement e = d_.sample(probe_rng_);
    for (int y : {1, -1}) {
      const double v = q.phi(e, y);
      if (!(std::abs(v) <= 1.0 + kBoundSlack)) {
        throw ContractViolation("query '" + q.label + "' is unbounded: |phi| = " +
                                std::to_string(v) + " at " + e.describe());
      }
    }
  }
}

double SQOracle::query(const SQQuery& q) {
  check_query(q);
  const double answer = std::visit(
      Overloaded{[&](const ExactPolicy&) { return noisy_expectation(q); },
                 [&](const RandomWithinTau&) {
                   std::uniform_real_distribution<double> off(-q.tau, q.tau);
                   return noisy_expectation(q) + off(policy_rng_);
                 },
                 [&](const AdversarialCallback& a) {
                   const double truth = noisy_expectation(q);
                   const double y = a.respond(truth, q.tau);
                   if (!(std::abs(y - truth) <= q.tau * (1.0 + 1e-12))) {
                     throw ContractViolation("adversary answered outside the tolerance band");
                   }
                   return y;
                 },
                 [&](const EmpiricalFromSamples& e) {
                   const std::size_t m =
                       e.samples > 0
                           ? e.samples
                           : hoeffding_sample_count(q.tau,
                                                    0.01 / static_cast<double>(e.planned_queries));
                   double acc = 0.0;
                   for (std::size_t s = 0; s < m; ++s) {
                     const LabeledExample ex = draw_example(policy_rng_);
                     acc += q.phi(ex.measurement, ex.label);
                   }
                   return acc / static_cast<double>(m);
                 }},
      config_.policy);
  transcript_.push_back(TranscriptEntry{transcript_.size(), q.tau, answer, q.label});
  return answer;
}

}  // namespace qsq
