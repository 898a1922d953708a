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

#include "qsq/experiments.hpp"

#include <gtest/gtest.h>

#include "qsq/errors.hpp"

namespace qsq {
namespace {

using nlohmann::json;

ExperimentConfig config(const char* text) { return parse_config(json::parse(text)); }

TEST(Config, DefaultsAndRoundTrip) {
  const auto c = config(R"({
    "experiment": "learn-product", "n": 4,
    "distribution": {"kind": "haar_product"},
    "noise": {"kind": "depolarizing", "eta": 0.5},
    "policy": {"kind": "random_within_tau"},
    "learner": {"epsilon": 0.25, "targets": "pure", "grid_search": true, "eta_upper": 0.9},
    "seed": 42, "trials": 3, "jobs": 2
  })");
  EXPECT_EQ(c.n, 4u);
  EXPECT_EQ(c.noise.eta, 0.5);
  EXPECT_TRUE(c.learner.grid_search);
  EXPECT_EQ(c.lpn.m, LpnSpec{}.m);
  EXPECT_EQ(parse_config(config_to_json(c)), c);

  auto with_options = c;
  with_options.learner.tau = 0.01;
  with_options.lpn.min_recovery = 0.9;
  with_options.distribution.kind = "finite";
  with_options.distribution.items = json::parse(R"([["+XZ", 0.5], [{"qubit": 0, "direction": [0, 0, 1]}, 0.5]])");
  with_options.learner.grid_search = false;
  EXPECT_EQ(parse_config(config_to_json(with_options)), with_options);
}

TEST(Config, RejectsUnknownFieldsAtEveryLevel) {
  EXPECT_THROW(config(R"({"experiment": "sda", "colour": 1})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"noise": {"kind": "none", "rate": 0.1}})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"learner": {"eps": 0.1}})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"policy": {"kind": "exact", "seed": 1}})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"lpn": {"m": 10, "noise": 0.1}})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"distribution": {"kind": "uniform_pauli", "q": 1}})"), std::invalid_argument);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(config(R"({"experiment": "fly"})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"noise": {"kind": "thermal"}})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"n": "two"})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"learner": {"grid_search": true}})"), std::invalid_argument);
  EXPECT_THROW(config(R"({"learner": {"validation": 0}})"), std::invalid_argument);
  EXPECT_THROW(parse_config(json::array()), std::invalid_argument);
}

TEST(Factories, DistributionsNoiseAndPolicies) {
  DistributionSpec spec;
  spec.kind = "uniform_parity";
  EXPECT_EQ(make_distribution(spec, 3).support_size(), 8u);
  spec.kind = "finite";
  spec.items = json::parse(R"([["-ZZ", 0.25], [{"qubit": 1, "direction": [1, 0, 0]}, 0.75]])");
  EXPECT_EQ(make_distribution(spec, 2).support_size(), 2u);
  spec.items = json::parse(R"([["Z", 1.0]])");
  EXPECT_THROW(make_distribution(spec, 2), DimensionMismatch);

  NoiseSpec noise{"bounded_channel", 0.2, 0.1};
  const auto model = make_noise(noise);
  const auto* b = std::get_if<BoundedChannel>(&model);
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->channel->trace_bound(), 0.1);
  EXPECT_NO_THROW(validate_noise(model));

  EXPECT_TRUE(std::holds_alternative<EmpiricalFromSamples>(make_policy({"empirical", 0}, 1, 3)));
  EXPECT_TRUE(std::holds_alternative<AdversarialCallback>(make_policy({"adversarial", 0}, 1, 3)));
}

TEST(Runs, VerifyLemmasSingleQubit) {
  auto c = config(R"({"experiment": "verify-lemmas", "n": 1, "mc_samples": 100000})");
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.all_passed()) << r.to_json().dump(2);
  EXPECT_EQ(r.exact["stabilizer_count"], 6);
  EXPECT_GE(r.runtime_seconds, 0.0);
  c.n = 4;
  EXPECT_THROW(run_experiment(c), BudgetExceeded);
}

TEST(Runs, SdaTwoQubits) {
  const auto r = run_experiment(config(R"({"experiment": "sda", "n": 2})"));
  EXPECT_TRUE(r.all_passed()) << r.to_json().dump(2);
  EXPECT_EQ(r.exact["lemma_bound"]["lower_bound"]["num"], 60);
  EXPECT_EQ(r.exact["lemma_bound"]["gamma"]["den"], 4);
  EXPECT_TRUE(r.exact["query_lower_bound"]["holds"].get<bool>());
}

TEST(Runs, SdaSingleQubitComparesExactAndBound) {
  const auto r = run_experiment(config(R"({"experiment": "sda", "n": 1})"));
  EXPECT_TRUE(r.all_passed()) << r.to_json().dump(2);
  EXPECT_EQ(r.exact["exact_vs_bound"].size(), 4u);
}

TEST(Runs, LearnProductIsIndependentOfJobCount) {
  auto c = config(R"({"experiment": "learn-product", "n": 3,
                      "policy": {"kind": "random_within_tau"},
                      "noise": {"kind": "classification", "eta": 0.25},
                      "learner": {"epsilon": 0.04}, "trials": 12, "seed": 5})");
  const auto one = run_experiment(c);
  c.jobs = 4;
  const auto four = run_experiment(c);
  EXPECT_TRUE(one.all_passed());
  EXPECT_EQ(one.metrics, four.metrics);
  c.jobs = 1;
  EXPECT_EQ(run_experiment(c).deterministic_json(), one.deterministic_json());
  c.seed = 6;
  EXPECT_NE(run_experiment(c).metrics, one.metrics);
}

TEST(Runs, LearnProductNoiseKinds) {
  for (const char* text : {
           R"({"experiment": "learn-product", "n": 2, "trials": 5, "noise": {"kind": "depolarizing", "eta": 0.5}})",
           R"({"experiment": "learn-product", "n": 2, "trials": 3, "noise": {"kind": "depolarizing", "eta": 0.5},
               "learner": {"targets": "pure", "grid_search": true, "eta_upper": 0.6, "validation": 5000}})",
           R"({"experiment": "learn-product", "n": 2, "trials": 5, "learner": {"epsilon": 0.25},
               "noise": {"kind": "bounded_channel", "eta": 0.02, "channel_eta": 0.01}})",
           R"({"experiment": "learn-product", "n": 2, "trials": 5, "learner": {"epsilon": 0.25},
               "noise": {"kind": "malicious", "eta": 0.01}})",
           R"({"experiment": "learn-product", "n": 3, "trials": 5, "learner": {"mode": "basis"},
               "policy": {"kind": "adversarial"}})",
           R"({"experiment": "learn-product", "n": 2, "trials": 2, "learner": {"epsilon": 0.25},
               "policy": {"kind": "empirical"}})"}) {
    const auto r = run_experiment(config(text));
    EXPECT_TRUE(r.all_passed()) << text << "\n" << r.to_json().dump(2);
  }
}

TEST(Runs, LearnProductNeedsTheHaarDistribution) {
  EXPECT_THROW(run_experiment(config(R"({"experiment": "learn-product", "distribution": {"kind": "uniform_pauli"}})")),
               std::invalid_argument);
}

TEST(Runs, Lpn) {
  const auto clean = run_experiment(config(R"({"experiment": "lpn", "n": 10, "trials": 5,
                                                "lpn": {"m": 40}})"));
  EXPECT_TRUE(clean.all_passed()) << clean.to_json().dump(2);
  const auto noisy = run_experiment(config(R"({"experiment": "lpn", "n": 8, "trials": 5,
                                                "lpn": {"m": 300, "eta": 0.1}})"));
  EXPECT_TRUE(noisy.all_passed()) << noisy.to_json().dump(2);
  EXPECT_THROW(run_experiment(config(R"({"experiment": "lpn", "n": 24, "lpn": {"eta": 0.1}})")),
               BudgetExceeded);
}

TEST(Runs, NoiseDemo) {
  for (const char* noise : {R"({"kind": "none"})", R"({"kind": "classification", "eta": 0.4})",
                            R"({"kind": "depolarizing", "eta": 0.9})",
                            R"({"kind": "bounded_channel", "eta": 0.01, "channel_eta": 0.005})"}) {
    auto j = json::parse(R"({"experiment": "noise-demo", "n": 2, "learner": {"epsilon": 0.25},
                            "policy": {"kind": "adversarial"}})");
    j["noise"] = json::parse(noise);
    const auto r = run_experiment(parse_config(j));
    EXPECT_TRUE(r.all_passed()) << noise << "\n" << r.to_json().dump(2);
  }
}

TEST(Report, JsonShape) {
  const auto r = run_experiment(config(R"({"experiment": "sda", "n": 1})"));
  const auto j = r.to_json();
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_TRUE(j.contains("runtime_seconds"));
  EXPECT_FALSE(r.deterministic_json().contains("runtime_seconds"));
  EXPECT_EQ(j["assertions"].size(), r.assertions.size());
  EXPECT_THROW(run_experiment(ExperimentConfig{}), std::invalid_argument);
}

}  // namespace
}  // namespace qsq
