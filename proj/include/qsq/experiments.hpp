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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsq/pconcept.hpp"
#include "qsq/sq_oracle.hpp"

namespace qsq {

inline constexpr const char* kVersion = "0.1.0";

struct DistributionSpec {
  std::string kind = "haar_product";  // uniform_pauli | uniform_parity | haar_product | finite
  std::size_t n = 0;                   // 0: take the experiment's n
  // finite only: [measurement, weight] with measurement a signed Pauli string
  // such as "+XZ" or {"qubit": k, "direction": [x, y, z]}.
  nlohmann::json items = nlohmann::json::array();

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

struct NoiseSpec {
  std::string kind = "none";  // none | classification | malicious | depolarizing | bounded_channel
  double eta = 0.0;           // bounded_channel: declared diamond bound
  double channel_eta = 0.0;   // bounded_channel: rate of the depolarizing channel behind it

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

struct PolicySpec {
  std::string kind = "exact";  // exact | random_within_tau | adversarial | empirical
  std::size_t samples = 0;     // empirical: 0 picks the Hoeffding count

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

struct LearnerSpec {
  double epsilon = 0.01;
  std::optional<double> tau;       // overrides the derived per-query tolerance
  std::string mode = "product";    // product | basis
  std::string targets = "mixed";   // mixed | pure
  bool grid_search = false;        // depolarizing only: learn eta by grid search
  double eta_upper = 0.95;
  std::size_t validation = 20000;

  friend bool operator==(const LearnerSpec&, const LearnerSpec&) = default;
};

struct LpnSpec {
  std::size_t m = 64;
  double eta = 0.0;
  std::optional<double> min_recovery;
  std::size_t max_retries = 8;

  friend bool operator==(const LpnSpec&, const LpnSpec&) = default;
};

struct ExperimentConfig {
  std::string experiment;  // verify-lemmas | learn-product | lpn | sda | noise-demo
  std::size_t n = 2;
  DistributionSpec distribution;
  NoiseSpec noise;
  PolicySpec policy;
  LearnerSpec learner;
  LpnSpec lpn;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  std::size_t jobs = 1;
  std::string output;
  std::string transcript;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Rejects unknown fields at every level.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

MeasurementDistribution make_distribution(const DistributionSpec& spec, std::size_t n);
// Oracle-side noise model; bounded_channel builds a DepolarizingChannel.
NoiseModel make_noise(const NoiseSpec& spec);
ResponsePolicy make_policy(const PolicySpec& spec, std::uint64_t seed, std::size_t planned_queries);

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  ExperimentConfig config;
  nlohmann::json metrics = nlohmann::json::object();
  nlohmann::json exact = nlohmann::json::object();
  std::vector<Assertion> assertions;
  double runtime_seconds = 0.0;

  bool all_passed() const;
  // Everything except the runtime, so identical configs give identical dumps.
  nlohmann::json deterministic_json() const;
  nlohmann::json to_json() const;
};

Report run_verify_lemmas(const ExperimentConfig& config);
Report run_learn_product(const ExperimentConfig& config);
Report run_lpn(const ExperimentConfig& config);
Report run_sda(const ExperimentConfig& config);
Report run_noise_demo(const ExperimentConfig& config);

// Dispatches on config.experiment and fills in the runtime.
Report run_experiment(const ExperimentConfig& config);

}  // namespace qsq
