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

// qsq_cli: seeded experiment runner.
//
//   qsq_cli verify-lemmas --config cfg.json --seed 7 --out report.json
//   qsq_cli lpn --n 12 --trials 100 --jobs 4
//
// The report is JSON; the exit code is 0 iff every assertion in it passed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qsq/experiments.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> n;
  std::string out;
};

int run(const std::string& experiment, const Overrides& o) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw std::runtime_error("cannot read config " + o.config_path);
    j = nlohmann::json::parse(in);
  }
  qsq::ExperimentConfig config = qsq::parse_config(j);
  if (!config.experiment.empty() && config.experiment != experiment) {
    throw std::invalid_argument("config is for '" + config.experiment + "', not '" + experiment + "'");
  }
  config.experiment = experiment;
  if (o.seed) config.seed = *o.seed;
  if (o.trials) config.trials = *o.trials;
  if (o.jobs) config.jobs = *o.jobs;
  if (o.n) config.n = *o.n;
  if (!o.out.empty()) config.output = o.out;

  const qsq::Report report = qsq::run_experiment(config);
  const std::string text = report.to_json().dump(2);
  if (config.output.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(config.output);
    if (!out) throw std::runtime_error("cannot write " + config.output);
    out << text << '\n';
  }
  for (const auto& a : report.assertions) {
    std::cerr << (a.passed ? "PASS " : "FAIL ") << a.name;
    if (!a.detail.empty()) std::cerr << "  (" << a.detail << ")";
    std::cerr << '\n';
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded experiments for SQ learning of quantum states"};
  app.require_subcommand(1);
  Overrides o;
  std::string chosen;
  for (const char* name : {"verify-lemmas", "learn-product", "lpn", "sda", "noise-demo"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--out", o.out, "report path (default: stdout)");
    sub->add_option("--trials", o.trials, "number of trials");
    sub->add_option("--jobs", o.jobs, "worker threads");
    sub->add_option("--n", o.n, "qubit count");
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);
  try {
    return run(chosen, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
