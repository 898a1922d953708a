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
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qsq/pconcept.hpp"
#include "qsq/random.hpp"

namespace qsq {

// Closed-form description of a query over HaarSingleQubitProduct(n). Writing
// phi(E, Y) = a(E) + Y b(E) and E = projector(k, u), the query expectation
// only needs a_mean[k] = E_u[a(k, u)] and b_dipole[k] = E_u[b(k, u) u],
// because f(E) is linear in u.
struct HaarMoments {
  std::vector<double> a_mean;
  std::vector<BlochVector> b_dipole;
};

// Queries sharing a non-empty label are treated as one registered function:
// the oracle spot-checks |phi| <= 1 only on the first registration.
struct SQQuery {
  std::function<double(const Measurement&, int)> phi;
  double tau = 0.0;
  std::optional<HaarMoments> haar_moments;
  std::string label;
};

// phi(E, Y) = a(E) + Y b(E) split into its label-independent a-part and
// label-dependent Y.b-part. Both parts keep the parent's tolerance.
SQQuery label_independent_part(const SQQuery& q);
SQQuery label_dependent_part(const SQQuery& q);

struct LabeledExample {
  Measurement measurement;
  int label = 1;
};

// A quantum channel acting on the unknown state, described through its effect
// on f-values.
class Channel {
 public:
  virtual ~Channel() = default;
  // f_{Lambda(rho)}(E).
  virtual double f_value(const QuantumState& rho, const Measurement& e) const = 0;
  virtual BlochVector reduced_bloch(const QuantumState& rho, std::size_t qubit) const = 0;
  // Smallest b with |tr(E (rho - Lambda(rho)))| <= b for every rho and E.
  virtual double trace_bound() const = 0;
  virtual std::string name() const = 0;
};

// Lambda(rho) = (1 - eta) rho + eta I/2^n.
class DepolarizingChannel final : public Channel {
 public:
  explicit DepolarizingChannel(double eta);
  double eta() const { return eta_; }
  double f_value(const QuantumState& rho, const Measurement& e) const override;
  BlochVector reduced_bloch(const QuantumState& rho, std::size_t qubit) const override;
  double trace_bound() const override { return eta_; }
  std::string name() const override { return "depolarizing"; }

 private:
  double eta_;
};

struct NoNoise {};
// Every label flipped independently with probability eta < 1/2.
struct Classification {
  double eta = 0.0;
};
// Examples drawn from (1 - eta) f(D) + eta Q. Without an explicit Q the
// corruption is E ~ D with a uniform label.
struct Malicious {
  double eta = 0.0;
  std::optional<std::vector<std::pair<LabeledExample, double>>> corruption;
};
struct Depolarizing {
  double eta = 0.0;
};
// Any channel whose declared diamond-distance bound to the identity is eta.
struct BoundedChannel {
  double eta = 0.0;
  std::shared_ptr<const Channel> channel;
};
using NoiseModel = std::variant<NoNoise, Classification, Malicious, Depolarizing, BoundedChannel>;

// Throws std::invalid_argument on out-of-range rates or an inadmissible channel.
void validate_noise(const NoiseModel& noise);
std::string noise_name(const NoiseModel& noise);

struct ExactPolicy {};
// Truth plus a uniform offset in [-tau, tau].
struct RandomWithinTau {
  std::uint64_t seed = 0;
};
// respond(truth, tau) must stay inside [truth - tau, truth + tau].
struct AdversarialCallback {
  std::function<double(double truth, double tau)> respond;
};
// Empirical mean over fresh noisy examples. With samples == 0 the count is
// ceil(2 ln(2/delta) / tau^2), delta = 0.01 / planned_queries.
struct EmpiricalFromSamples {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t planned_queries = 1;
};
using ResponsePolicy = std::variant<ExactPolicy, RandomWithinTau, AdversarialCallback,
                                    EmpiricalFromSamples>;

// Deviates by the full tolerance each time, flipping direction on every call;
// the first deviation points toward zero.
AdversarialCallback make_alternating_adversary();

std::size_t hoeffding_sample_count(double tau, double delta);

struct OracleConfig {
  ResponsePolicy policy = ExactPolicy{};
  NoiseModel noise = NoNoise{};
  // Non-zero lets the truth of a query with no closed form be estimated by
  // Monte Carlo with this many measurement samples.
  std::size_t mc_fallback_samples = 0;
  std::uint64_t probe_seed = 0;
};

struct TranscriptEntry {
  std::size_t index = 0;
  double tau = 0.0;
  double answer = 0.0;
  std::string label;
};

void write_transcript_jsonl(std::ostream& out, const std::vector<TranscriptEntry>& entries);

class StatisticalQueryOracle {
 public:
  virtual ~StatisticalQueryOracle() = default;
  virtual double query(const SQQuery& q) = 0;
  virtual const MeasurementDistribution& distribution() const = 0;
  // Number of queries this oracle has answered.
  virtual std::size_t queries_issued() const = 0;
};

// Simulated SQ oracle for an unknown state. Not thread-safe; one query at a time.
class SQOracle final : public StatisticalQueryOracle {
 public:
  SQOracle(QuantumState rho, MeasurementDistribution d, OracleConfig config = {});

  double query(const SQQuery& q) override;
  const MeasurementDistribution& distribution() const override { return d_; }
  std::size_t queries_issued() const override { return transcript_.size(); }

  // E_{E~D, Y~noisy}[phi(E, Y)] under the configured noise model.
  double noisy_expectation(const SQQuery& q) const;
  // Noisy example mean E[Y | E] (before any malicious replacement).
  double noisy_label_mean(const Measurement& e) const;
  // i.i.d. labeled examples from the same noisy source the oracle answers for.
  std::vector<LabeledExample> draw_examples(std::size_t m, Rng& rng) const;

  const QuantumState& state() const { return rho_; }
  const OracleConfig& config() const { return config_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

 private:
  double clean_mixture_expectation(const SQQuery& q) const;
  double corruption_expectation(const SQQuery& q) const;
  LabeledExample draw_example(Rng& rng) const;
  void check_query(const SQQuery& q);

  QuantumState rho_;
  MeasurementDistribution d_;
  OracleConfig config_;
  Rng policy_rng_;
  Rng probe_rng_;
  std::set<std::string> probed_labels_;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace qsq
