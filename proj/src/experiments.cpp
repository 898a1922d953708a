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

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "qsq/errors.hpp"
#include "qsq/json_util.hpp"
#include "qsq/learners.hpp"
#include "qsq/lpn.hpp"
#include "qsq/noise.hpp"
#include "qsq/stabilizer.hpp"
#include "qsq/statistical_dimension.hpp"

namespace qsq {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw std::invalid_argument("unknown field '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void require_one_of(const std::string& value, const std::set<std::string>& options,
                    const std::string& what) {
  if (!options.contains(value)) throw std::invalid_argument("unsupported " + what + " '" + value + "'");
}

void add(Report& r, std::string name, bool passed, std::string detail = {}) {
  r.assertions.push_back(Assertion{std::move(name), passed, std::move(detail)});
}

std::uint64_t derived_seed(std::uint64_t seed, Stream tag, std::uint64_t index) {
  return substream(seed, tag, index)();
}

Measurement parse_measurement(const json& j, std::size_t n) {
  if (j.is_string()) {
    PauliOperator p = PauliOperator::parse(j.get<std::string>());
    require_same_n(p.n(), n, "finite distribution item");
    return Measurement::pauli(std::move(p));
  }
  check_keys(j, {"qubit", "direction"}, "projector item");
  const auto d = j.at("direction").get<std::vector<double>>();
  if (d.size() != 3) throw std::invalid_argument("projector direction needs three components");
  return Measurement::projector(n, j.at("qubit").get<std::size_t>(), BlochVector{d[0], d[1], d[2]});
}

// |0...0 +> : Z on the first n-1 qubits, X on the last.
StabilizerGroup zero_plus_state(std::size_t n) {
  std::vector<PauliOperator> gens;
  for (std::size_t q = 0; q + 1 < n; ++q) gens.push_back(PauliOperator::single(n, q, PauliKind::Z));
  gens.push_back(PauliOperator::single(n, n - 1, PauliKind::X));
  return StabilizerGroup(std::move(gens));
}

// 2^n prod_{k=1}^{n} (2^k + 1).
std::uint64_t stabilizer_count_formula(std::size_t n) {
  std::uint64_t c = std::uint64_t{1} << n;
  for (std::size_t k = 1; k <= n; ++k) c *= (std::uint64_t{1} << k) + 1;
  return c;
}

template <class Fn>
std::vector<json> run_trials(const ExperimentConfig& config, Fn fn) {
  std::vector<json> out(config.trials);
  run_blocks(config.trials, std::max<std::size_t>(1, config.jobs),
             [&](std::size_t t) { out[t] = fn(t); });
  return out;
}

}  // namespace

// ------------------------------------------------------------------- config

namespace {

ExperimentConfig parse_config_fields(const json& j) {
  check_keys(j, {"experiment", "n", "distribution", "noise", "policy", "learner", "lpn",
                 "mc_samples", "seed", "trials", "jobs", "output", "transcript"},
             "config");
  ExperimentConfig c;
  read(j, "experiment", c.experiment);
  read(j, "n", c.n);
  if (j.contains("distribution")) {
    const json& d = j["distribution"];
    check_keys(d, {"kind", "n", "items"}, "distribution");
    read(d, "kind", c.distribution.kind);
    read(d, "n", c.distribution.n);
    if (d.contains("items")) c.distribution.items = d["items"];
    require_one_of(c.distribution.kind, {"uniform_pauli", "uniform_parity", "haar_product", "finite"},
                   "distribution kind");
  }
  if (j.contains("noise")) {
    const json& nz = j["noise"];
    check_keys(nz, {"kind", "eta", "channel_eta"}, "noise");
    read(nz, "kind", c.noise.kind);
    read(nz, "eta", c.noise.eta);
    read(nz, "channel_eta", c.noise.channel_eta);
    require_one_of(c.noise.kind,
                   {"none", "classification", "malicious", "depolarizing", "bounded_channel"},
                   "noise kind");
  }
  if (j.contains("policy")) {
    const json& p = j["policy"];
    check_keys(p, {"kind", "samples"}, "policy");
    read(p, "kind", c.policy.kind);
    read(p, "samples", c.policy.samples);
    require_one_of(c.policy.kind, {"exact", "random_within_tau", "adversarial", "empirical"},
                   "policy kind");
  }
  if (j.contains("learner")) {
    const json& l = j["learner"];
    check_keys(l, {"epsilon", "tau", "mode", "targets", "grid_search", "eta_upper", "validation"},
               "learner");
    read(l, "epsilon", c.learner.epsilon);
    if (l.contains("tau")) c.learner.tau = l["tau"].get<double>();
    read(l, "mode", c.learner.mode);
    read(l, "targets", c.learner.targets);
    read(l, "grid_search", c.learner.grid_search);
    read(l, "eta_upper", c.learner.eta_upper);
    read(l, "validation", c.learner.validation);
    require_one_of(c.learner.mode, {"product", "basis"}, "learner mode");
    require_one_of(c.learner.targets, {"mixed", "pure"}, "learner targets");
    if (c.learner.validation == 0) throw std::invalid_argument("learner validation must be >= 1");
    if (c.learner.grid_search && c.learner.targets != "pure") {
      throw std::invalid_argument(
          "grid search needs pure targets: for mixed product states the depolarizing rate "
          "cannot be told apart from a shorter Bloch vector");
    }
  }
  if (j.contains("lpn")) {
    const json& l = j["lpn"];
    check_keys(l, {"m", "eta", "min_recovery", "max_retries"}, "lpn");
    read(l, "m", c.lpn.m);
    read(l, "eta", c.lpn.eta);
    if (l.contains("min_recovery")) c.lpn.min_recovery = l["min_recovery"].get<double>();
    read(l, "max_retries", c.lpn.max_retries);
  }
  read(j, "mc_samples", c.mc_samples);
  read(j, "seed", c.seed);
  read(j, "trials", c.trials);
  read(j, "jobs", c.jobs);
  read(j, "output", c.output);
  read(j, "transcript", c.transcript);
  if (!c.experiment.empty()) {
    require_one_of(c.experiment, {"verify-lemmas", "learn-product", "lpn", "sda", "noise-demo"},
                   "experiment");
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  try {
    return parse_config_fields(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["n"] = c.n;
  j["distribution"] = {{"kind", c.distribution.kind}, {"n", c.distribution.n},
                       {"items", c.distribution.items}};
  j["noise"] = {{"kind", c.noise.kind}, {"eta", c.noise.eta}, {"channel_eta", c.noise.channel_eta}};
  j["policy"] = {{"kind", c.policy.kind}, {"samples", c.policy.samples}};
  j["learner"] = {{"epsilon", c.learner.epsilon},       {"mode", c.learner.mode},
                  {"targets", c.learner.targets},       {"grid_search", c.learner.grid_search},
                  {"eta_upper", c.learner.eta_upper},   {"validation", c.learner.validation}};
  if (c.learner.tau) j["learner"]["tau"] = *c.learner.tau;
  j["lpn"] = {{"m", c.lpn.m}, {"eta", c.lpn.eta}, {"max_retries", c.lpn.max_retries}};
  if (c.lpn.min_recovery) j["lpn"]["min_recovery"] = *c.lpn.min_recovery;
  j["mc_samples"] = c.mc_samples;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["jobs"] = c.jobs;
  j["output"] = c.output;
  j["transcript"] = c.transcript;
  return j;
}

MeasurementDistribution make_distribution(const DistributionSpec& spec, std::size_t n) {
  const std::size_t dn = spec.n != 0 ? spec.n : n;
  if (spec.kind == "uniform_pauli") return MeasurementDistribution(UniformPauli{dn});
  if (spec.kind == "uniform_parity") return MeasurementDistribution(UniformParity{dn});
  if (spec.kind == "haar_product") return MeasurementDistribution(HaarSingleQubitProduct{dn});
  if (spec.kind == "finite") {
    FiniteWeighted f;
    for (const auto& item : spec.items) {
      if (!item.is_array() || item.size() != 2) {
        throw std::invalid_argument("finite item must be [measurement, weight]");
      }
      f.items.emplace_back(parse_measurement(item[0], dn), item[1].get<double>());
    }
    return MeasurementDistribution(std::move(f));
  }
  throw std::invalid_argument("unsupported distribution kind '" + spec.kind + "'");
}

NoiseModel make_noise(const NoiseSpec& spec) {
  if (spec.kind == "none") return NoNoise{};
  if (spec.kind == "classification") return Classification{spec.eta};
  if (spec.kind == "malicious") return Malicious{spec.eta, std::nullopt};
  if (spec.kind == "depolarizing") return Depolarizing{spec.eta};
  if (spec.kind == "bounded_channel") {
    return BoundedChannel{spec.eta, std::make_shared<DepolarizingChannel>(spec.channel_eta)};
  }
  throw std::invalid_argument("unsupported noise kind '" + spec.kind + "'");
}

ResponsePolicy make_policy(const PolicySpec& spec, std::uint64_t seed, std::size_t planned_queries) {
  if (spec.kind == "exact") return ExactPolicy{};
  if (spec.kind == "random_within_tau") return RandomWithinTau{seed};
  if (spec.kind == "adversarial") return make_alternating_adversary();
  if (spec.kind == "empirical") return EmpiricalFromSamples{spec.samples, seed, planned_queries};
  throw std::invalid_argument("unsupported policy kind '" + spec.kind + "'");
}

// ------------------------------------------------------------------- report

bool Report::all_passed() const {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

json Report::deterministic_json() const {
  json j;
  j["version"] = kVersion;
  j["experiment"] = config.experiment;
  j["config"] = config_to_json(config);
  j["metrics"] = metrics;
  j["exact"] = exact;
  j["assertions"] = json::array();
  for (const auto& a : assertions) {
    j["assertions"].push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  }
  j["passed"] = all_passed();
  return j;
}

json Report::to_json() const {
  json j = deterministic_json();
  j["runtime_seconds"] = runtime_seconds;
  return j;
}

// ------------------------------------------------------------ verify-lemmas

Report run_verify_lemmas(const ExperimentConfig& config) {
  Report r;
  r.config = config;
  const std::size_t n = config.n;
  if (n == 0 || n > kMaxEnumerationQubits) {
    throw BudgetExceeded("verify-lemmas supports 1 <= n <= " + std::to_string(kMaxEnumerationQubits));
  }
  const auto groups = enumerate_stabilizer_groups(n);
  r.exact["stabilizer_count"] = groups.size();
  add(r, "stabilizer_count", groups.size() == stabilizer_count_formula(n),
      std::to_string(groups.size()) + " groups, closed form " +
          std::to_string(stabilizer_count_formula(n)));

  // Correlation lemma, exhaustive: <f_S, f_T> = (plus - minus) / 4^n.
  const Rational four_n = pow2_rational(static_cast<int>(2 * n));
  const Rational norm_expected = pow2_rational(-static_cast<int>(n));
  const Rational cross_bound = pow2_rational(-static_cast<int>(n + 1));
  bool norms_ok = true;
  bool cross_ok = true;
  std::size_t tight_pairs = 0;
  Rational max_cross = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t k = i; k < groups.size(); ++k) {
      const auto c = signed_intersection_counts(groups[i], groups[k]);
      Rational v = (Rational(static_cast<long long>(c.plus)) - Rational(static_cast<long long>(c.minus))) /
                   four_n;
      if (v < 0) v = -v;
      if (i == k) {
        norms_ok = norms_ok && v == norm_expected;
      } else {
        cross_ok = cross_ok && v <= cross_bound;
        if (v == cross_bound) ++tight_pairs;
        max_cross = std::max(max_cross, v);
      }
    }
  }
  r.exact["norm_sq"] = rational_to_json(norm_expected);
  r.exact["max_cross_correlation"] = rational_to_json(max_cross);
  r.exact["tight_pairs"] = tight_pairs;
  add(r, "norm_sq_equals_2^-n", norms_ok);
  add(r, "cross_correlation_le_2^-(n+1)", cross_ok, "max " + to_string(max_cross));
  add(r, "cross_bound_attained", tight_pairs > 0,
      std::to_string(tight_pairs) + " pairs at the bound");
  if (n >= 2) {
    const MeasurementDistribution up(UniformPauli{n});
    const Estimate w = inner_product(QuantumState(StabilizerGroup::zero_state(n)),
                                     QuantumState(zero_plus_state(n)), up, ExactMode{});
    add(r, "witness_zero_vs_zero_plus", w.exact && *w.exact == cross_bound,
        w.exact ? to_string(*w.exact) : "inexact");
  }

  // Maximally mixed identity over every state.
  {
    const MeasurementDistribution up(UniformPauli{n});
    const QuantumState mixed = QuantumState::maximally_mixed(n);
    const Rational expected = pow2_rational(-static_cast<int>(2 * n));
    bool ok = true;
    for (const auto& g : groups) {
      const QuantumState rho(g);
      const Estimate norm = inner_product(rho, rho, up, ExactMode{});
      const Estimate gap = squared_loss(rho, mixed, up, ExactMode{});
      ok = ok && norm.exact && gap.exact && *norm.exact - *gap.exact == expected;
    }
    add(r, "maximally_mixed_gap_equals_4^-n", ok);
  }

  // Parity identity f_{|y>}(E_x) = (-1)^{x.y}.
  {
    const std::size_t pn = std::min<std::size_t>(n + 1, 4);
    bool ok = true;
    for (std::uint64_t y = 0; y < (1u << pn); ++y) {
      const QuantumState basis(StabilizerGroup::basis_state(BitVector::from_uint(pn, y)));
      for (std::uint64_t x = 0; x < (1u << pn); ++x) {
        const auto f = f_value_exact(basis, parity_measurement(BitVector::from_uint(pn, x)));
        const int chi = (std::popcount(x & y) & 1) ? -1 : 1;
        ok = ok && f && *f == chi;
      }
    }
    add(r, "parity_measurement_identity", ok, "exhaustive at n = " + std::to_string(pn));
  }

  // Haar single-qubit lemma and product-state loss lemma by Monte Carlo.
  {
    const std::size_t pairs = std::max<std::size_t>(1, std::min<std::size_t>(config.trials, 20));
    json rows = json::array();
    bool ok = true;
    for (std::size_t t = 0; t < pairs; ++t) {
      Rng rng = substream(config.seed, Stream::kTarget, t);
      const BlochVector psi = sample_haar_bloch(rng);
      const BlochVector rho = sample_ball_bloch(rng);
      const MonteCarloMode mode{config.mc_samples, derived_seed(config.seed, Stream::kMonteCarlo, t),
                                config.jobs};
      const Estimate e = haar_lemma_monte_carlo(psi, rho, mode);
      const double expected = 0.25 * psi.dot(rho);
      const double z = std::abs(e.value - expected) / e.std_error;
      ok = ok && z <= 4.0;
      rows.push_back({{"estimate", e.value}, {"expected", expected}, {"std_error", e.std_error}, {"z", z}});
    }
    r.metrics["haar_lemma"] = rows;
    add(r, "haar_lemma_within_4_sigma", ok, std::to_string(pairs) + " pairs");
  }
  {
    Rng rng = substream(config.seed, Stream::kTarget, 1000);
    const std::size_t pn = std::max<std::size_t>(n, 1);
    const MeasurementDistribution haar(HaarSingleQubitProduct{pn});
    const QuantumState a = random_product_state(pn, false, rng);
    const QuantumState b = random_product_state(pn, false, rng);
    const Estimate exact = squared_loss(a, b, haar, ExactMode{});
    const Estimate mc = squared_loss(
        a, b, haar,
        MonteCarloMode{std::min<std::size_t>(config.mc_samples, 200000),
                       derived_seed(config.seed, Stream::kMonteCarlo, 1000), config.jobs});
    const double z = std::abs(mc.value - exact.value) / mc.std_error;
    r.metrics["product_loss"] = {{"closed_form", exact.value}, {"monte_carlo", mc.value},
                                 {"std_error", mc.std_error}};
    add(r, "product_loss_closed_form_matches_monte_carlo", z <= 4.0, "z = " + std::to_string(z));
  }
  return r;
}

// ------------------------------------------------------------ learn-product

namespace {

struct TrialOutcome {
  json row;
  std::vector<TranscriptEntry> transcript;
};

TrialOutcome learn_product_trial(const ExperimentConfig& c, std::size_t t) {
  const std::size_t n = c.n;
  const MeasurementDistribution d = make_distribution(c.distribution, n);
  Rng target_rng = substream(c.seed, Stream::kTarget, t);
  const bool basis = c.learner.mode == "basis";
  const bool pure = c.learner.targets == "pure";

  std::optional<BitVector> bits;
  QuantumState target = QuantumState::maximally_mixed(n);
  if (basis) {
    BitVector y(n);
    for (std::size_t i = 0; i < n; ++i) y.set(i, target_rng() & 1u);
    bits = y;
    target = QuantumState(StabilizerGroup::basis_state(y));
  } else {
    target = random_product_state(n, pure, target_rng);
  }

  OracleConfig oc;
  const std::size_t planned = basis ? n : 3 * n;
  oc.policy = make_policy(c.policy, derived_seed(c.seed, Stream::kOracle, t), planned);
  oc.noise = make_noise(c.noise);
  oc.probe_seed = derived_seed(c.seed, Stream::kProbe, t);
  SQOracle oracle(target, d, oc);

  ProductLearnerOptions opts;
  opts.pure_targets = pure;
  auto learn = [&](StatisticalQueryOracle& o) {
    return basis ? learn_basis_state(o) : learn_product_state(o, c.learner.epsilon, opts);
  };

  json row = {{"trial", t}};
  LearnedHypothesis h{QuantumState::maximally_mixed(n), 0, {}, std::nullopt};
  const std::string& kind = c.noise.kind;
  if (kind == "none") {
    h = learn(oracle);
  } else if (kind == "classification") {
    ClassificationCorrectingOracle w(oracle, c.noise.eta);
    h = learn(w);
  } else if (kind == "malicious") {
    TighteningOracle w(oracle, TighteningOracle::Kind::kMalicious, c.noise.eta);
    h = learn(w);
  } else if (kind == "bounded_channel") {
    TighteningOracle w(oracle, TighteningOracle::Kind::kBoundedChannel, c.noise.eta);
    h = learn(w);
  } else if (kind == "depolarizing" && !c.learner.grid_search) {
    DepolarizingCorrectingOracle w(oracle, c.noise.eta, c.noise.eta,
                                   derived_seed(c.seed, Stream::kUnlabeled, t));
    h = learn(w);
  } else {
    Rng vrng = substream(c.seed, Stream::kValidation, t);
    const ValidationSet validation(oracle.draw_examples(c.learner.validation, vrng));
    const double eta_upper = c.learner.eta_upper;
    const double tau_theorem = std::sqrt(c.learner.epsilon) / static_cast<double>(n);
    const double delta = tau_theorem * (1.0 - eta_upper) * (1.0 - eta_upper);
    const std::uint64_t useed = derived_seed(c.seed, Stream::kUnlabeled, t);
    GridSearchResult g = eta_grid_search(
        [&](double guess) {
          DepolarizingCorrectingOracle w(oracle, guess, eta_upper, useed);
          return learn(w);
        },
        eta_upper, delta, validation);
    row["eta_hat"] = g.best_eta;
    row["grid_points"] = g.grid_points;
    h = std::move(g.hypothesis);
  }

  const std::size_t expected_queries = basis ? n : 3 * n;
  row["queries"] = h.queries_used;
  row["queries_ok"] = h.queries_used == expected_queries;
  if (basis) {
    const bool exact = h.basis_bits && *h.basis_bits == *bits;
    row["recovered"] = exact;
    row["passed"] = exact && h.queries_used == expected_queries;
  } else {
    const double loss = squared_loss(target, h.state, d, ExactMode{}).value;
    row["loss"] = loss;
    row["passed"] = loss <= c.learner.epsilon && h.queries_used == expected_queries;
  }
  return TrialOutcome{row, std::move(h.transcript)};
}

}  // namespace

Report run_learn_product(const ExperimentConfig& config) {
  Report r;
  r.config = config;
  if (config.n == 0) throw std::invalid_argument("n must be positive");
  if (config.distribution.kind != "haar_product") {
    throw std::invalid_argument("learn-product runs over the haar_product distribution");
  }
  std::vector<TrialOutcome> outcomes(config.trials);
  run_blocks(config.trials, std::max<std::size_t>(1, config.jobs),
             [&](std::size_t t) { outcomes[t] = learn_product_trial(config, t); });
  json rows = json::array();
  std::size_t passed = 0;
  bool queries_ok = true;
  double max_loss = 0.0;
  for (const auto& o : outcomes) {
    rows.push_back(o.row);
    passed += o.row["passed"].get<bool>() ? 1 : 0;
    queries_ok = queries_ok && o.row["queries_ok"].get<bool>();
    if (o.row.contains("loss")) max_loss = std::max(max_loss, o.row["loss"].get<double>());
  }
  r.metrics["runs"] = rows;
  r.metrics["passed_trials"] = passed;
  if (config.learner.mode == "product") r.metrics["max_loss"] = max_loss;
  add(r, "every_trial_meets_target", passed == config.trials,
      std::to_string(passed) + "/" + std::to_string(config.trials));
  add(r, "query_count", queries_ok,
      std::string(config.learner.mode == "basis" ? "n" : "3n") + " learner queries per trial");
  if (!config.transcript.empty() && !outcomes.empty()) {
    std::ofstream out(config.transcript);
    if (!out) throw std::runtime_error("cannot write transcript to " + config.transcript);
    write_transcript_jsonl(out, outcomes.front().transcript);
  }
  return r;
}

// -------------------------------------------------------------------- lpn

Report run_lpn(const ExperimentConfig& config) {
  Report r;
  r.config = config;
  const std::size_t n = config.n;
  const double eta = config.lpn.eta;
  if (eta > 0.0 && n > kMaxExhaustiveLpnBits) {
    throw BudgetExceeded("noisy LPN needs n <= " + std::to_string(kMaxExhaustiveLpnBits));
  }
  const auto rows = run_trials(config, [&](std::size_t t) {
    Rng rng = substream(config.seed, Stream::kLpn, t);
    json row = {{"trial", t}};
    bool round_trip = true;
    bool agree = true;
    bool recovered = false;
    if (eta == 0.0) {
      std::size_t attempts = 0;
      while (attempts < std::max<std::size_t>(1, config.lpn.max_retries)) {
        ++attempts;
        const LPNInstance inst = make_planted_lpn(n, config.lpn.m, 0.0, rng);
        const auto data = make_lpn_as_state_learning(inst);
        const auto decoded = decode_state_learning_dataset(data);
        round_trip = round_trip && decoded == inst.examples;
        const ParitySolution via_state = gaussian_elimination_parity(decoded, n);
        const ParitySolution raw = gaussian_elimination_parity(inst.examples, n);
        agree = agree && via_state.particular == raw.particular &&
                via_state.null_basis == raw.null_basis;
        if (via_state.unique) {
          recovered = via_state.particular == *inst.secret;
          break;
        }
      }
      row["attempts"] = attempts;
    } else {
      const LPNInstance inst = make_planted_lpn(n, config.lpn.m, eta, rng);
      const auto data = make_lpn_as_state_learning(inst);
      round_trip = decode_state_learning_dataset(data) == inst.examples;
      const ExhaustiveLPNResult raw = exhaustive_lpn_solver(inst);
      const ExhaustiveLPNResult via_state = parity_state_ml_solver(data, n);
      agree = raw.best == via_state.best && raw.best_disagreements == via_state.best_disagreements &&
              raw.tie_count == via_state.tie_count && raw.spectrum == via_state.spectrum;
      recovered = raw.tie_count == 1 && raw.best == *inst.secret;
      row["best_disagreements"] = raw.best_disagreements;
      row["ties"] = raw.tie_count;
      std::size_t secret_disagreements = 0;
      for (const auto& ex : inst.examples) secret_disagreements += ex.x.dot(*inst.secret) != ex.label;
      row["secret_disagreements"] = secret_disagreements;
      if (t == 0) {
        json spectrum = json::object();
        for (std::size_t k = 0; k < raw.spectrum.size(); ++k) {
          if (raw.spectrum[k] != 0) spectrum[std::to_string(k)] = raw.spectrum[k];
        }
        row["spectrum"] = spectrum;
      }
    }
    row["round_trip"] = round_trip;
    row["solvers_agree"] = agree;
    row["recovered"] = recovered;
    return row;
  });
  std::size_t recovered = 0;
  bool round_trip = true;
  bool agree = true;
  for (const auto& row : rows) {
    recovered += row["recovered"].get<bool>() ? 1 : 0;
    round_trip = round_trip && row["round_trip"].get<bool>();
    agree = agree && row["solvers_agree"].get<bool>();
  }
  const double rate = config.trials ? static_cast<double>(recovered) / static_cast<double>(config.trials) : 0.0;
  r.metrics["runs"] = rows;
  r.metrics["recovered"] = recovered;
  r.metrics["recovery_rate"] = rate;
  add(r, "embedding_round_trip", round_trip);
  add(r, "state_and_raw_solvers_agree", agree);
  const std::optional<double> target =
      config.lpn.min_recovery ? config.lpn.min_recovery : (eta == 0.0 ? std::optional<double>(0.99) : std::nullopt);
  if (target) {
    add(r, "recovery_rate", rate >= *target,
        std::to_string(recovered) + "/" + std::to_string(config.trials) + " recovered");
  }
  return r;
}

// -------------------------------------------------------------------- sda

Report run_sda(const ExperimentConfig& config) {
  Report r;
  r.config = config;
  const std::size_t n = config.n;
  if (n == 0 || n > kMaxEnumerationQubits) {
    throw BudgetExceeded("sda supports 1 <= n <= " + std::to_string(kMaxEnumerationQubits));
  }
  std::vector<QuantumState> states;
  for (auto& g : enumerate_stabilizer_groups(n)) states.emplace_back(std::move(g));
  const ConceptClass cls = ConceptClass::from_states(states, MeasurementDistribution(UniformPauli{n}));
  const Rational gamma = pow2_rational(-static_cast<int>(n + 1));
  const Rational kappa = pow2_rational(-static_cast<int>(n));
  r.exact["class_size"] = cls.size();
  r.exact["average_correlation"] = rational_to_json(average_correlation(cls));
  r.exact["kappa"] = rational_to_json(cls.kappa());
  r.exact["gamma_pair"] = rational_to_json(cls.max_off_diagonal());

  const SDAReport bound = sda_bound(cls, gamma, kappa, gamma);
  r.exact["lemma_bound"] = json::parse(sda_report_to_json(bound));
  add(r, "lemma_bound_equals_class_size",
      bound.lower_bound == Rational(static_cast<long long>(cls.size())) && bound.gamma == kappa,
      to_string(bound.lower_bound) + " at threshold " + to_string(bound.gamma));

  // Largest admissible tau = epsilon with epsilon^2 <= beta/3, beta = 2^{-n/2}.
  const double beta = std::pow(2.0, -0.5 * static_cast<double>(n));
  const auto tau_milli = static_cast<long long>(std::floor(std::sqrt(beta / 3.0) * 1000.0));
  const double tau = static_cast<double>(tau_milli) / 1000.0;
  const Rational tau_sq = Rational(tau_milli * tau_milli, 1000000);
  json verdict = {{"beta", beta}, {"epsilon", tau}, {"tau", tau}};
  if (tau_sq > gamma) {
    const SDAReport at_tau = sda_bound(cls, gamma, kappa, tau_sq - gamma);
    const Verdict v = verify_query_lower_bound(at_tau, tau, beta, tau);
    verdict["report"] = json::parse(sda_report_to_json(at_tau));
    verdict["holds"] = v.all_hold;
    verdict["statement"] = v.statement;
    add(r, "query_lower_bound_hypotheses", v.all_hold, v.statement);
  } else {
    verdict["holds"] = false;
    verdict["statement"] = "tau^2 does not exceed the pairwise correlation; the lemma gives nothing";
  }
  r.exact["query_lower_bound"] = verdict;

  if (cls.size() <= kMaxExactSdaClassSize) {
    json rows = json::array();
    bool ok = true;
    for (int k = 1; k <= 4; ++k) {
      const Rational gp = gamma * Rational(k, 4);
      const SDAReport b = sda_bound(cls, gamma, kappa, gp);
      const SDAReport e = sda_exact(cls, b.gamma);
      const bool consistent = e.kind == SDAReport::Kind::kUnbounded ||
                              (b.lower_bound < e.supremum && *sda_integer_value(b) <= e.exact_value);
      ok = ok && consistent;
      rows.push_back({{"threshold", rational_to_json(b.gamma)},
                      {"bound", rational_to_json(b.lower_bound)},
                      {"exact", json::parse(sda_report_to_json(e))}});
    }
    r.exact["exact_vs_bound"] = rows;
    add(r, "sda_exact_ge_bound", ok);
  }
  return r;
}

// ------------------------------------------------------------- noise-demo

Report run_noise_demo(const ExperimentConfig& config) {
  Report r;
  r.config = config;
  const std::size_t n = config.n;
  const MeasurementDistribution d(HaarSingleQubitProduct{n});
  Rng rng = substream(config.seed, Stream::kTarget, 0);
  const QuantumState target = random_product_state(n, false, rng);
  const double tau = config.learner.tau.value_or(
      product_learner_tolerance(n, config.learner.epsilon));

  SQOracle clean(target, d);
  OracleConfig oc;
  oc.noise = make_noise(config.noise);
  oc.policy = make_policy(config.policy, derived_seed(config.seed, Stream::kOracle, 0), 3 * n);
  oc.probe_seed = derived_seed(config.seed, Stream::kProbe, 0);
  SQOracle noisy(target, d, oc);

  std::unique_ptr<StatisticalQueryOracle> wrapper;
  const std::string& kind = config.noise.kind;
  if (kind == "classification") {
    wrapper = std::make_unique<ClassificationCorrectingOracle>(noisy, config.noise.eta);
  } else if (kind == "depolarizing") {
    wrapper = std::make_unique<DepolarizingCorrectingOracle>(
        noisy, config.noise.eta, config.noise.eta, derived_seed(config.seed, Stream::kUnlabeled, 0));
  } else if (kind == "malicious") {
    wrapper = std::make_unique<TighteningOracle>(noisy, TighteningOracle::Kind::kMalicious, config.noise.eta);
  } else if (kind == "bounded_channel") {
    wrapper = std::make_unique<TighteningOracle>(noisy, TighteningOracle::Kind::kBoundedChannel,
                                                 config.noise.eta);
  }

  json rows = json::array();
  bool within = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const SQQuery q = product_query(n, i, j, tau);
      const double truth = clean.noisy_expectation(q);
      const double noisy_truth = noisy.noisy_expectation(q);
      const double answer = wrapper ? wrapper->query(q) : noisy.query(q);
      within = within && std::abs(answer - truth) <= tau * (1.0 + 1e-9);
      rows.push_back({{"query", q.label}, {"clean", truth}, {"noisy", noisy_truth}, {"answer", answer}});
    }
  }
  r.metrics["queries"] = rows;
  r.metrics["tolerance"] = tau;
  add(r, "corrected_answers_within_tolerance", within);

  if (kind == "depolarizing" || kind == "bounded_channel") {
    const std::size_t an = std::min<std::size_t>(n, 2);
    const auto groups = enumerate_stabilizer_groups(an);
    const NoiseModel channel = make_noise(config.noise);
    const double eta = kind == "depolarizing" ? config.noise.eta : config.noise.channel_eta;
    const DepolarizingChannel lambda(eta);
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(groups.size(), 50); ++k) {
      const QuantumState rho(groups[(k * 7919) % groups.size()]);
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (2 * an)); ++idx) {
        for (bool neg : {false, true}) {
          const Measurement e = Measurement::pauli(PauliOperator::from_index(an, idx, neg));
          const double lhs = effect_expectation(adjoint_measurement(e, channel), rho);
          const double rhs = 0.5 * (1.0 + lambda.f_value(rho, e));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
    r.metrics["adjoint_max_error"] = worst;
    add(r, "adjoint_identity", worst <= 1e-12);
  }
  return r;
}

Report run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (config.experiment == "verify-lemmas") {
    r = run_verify_lemmas(config);
  } else if (config.experiment == "learn-product") {
    r = run_learn_product(config);
  } else if (config.experiment == "lpn") {
    r = run_lpn(config);
  } else if (config.experiment == "sda") {
    r = run_sda(config);
  } else if (config.experiment == "noise-demo") {
    r = run_noise_demo(config);
  } else {
    throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
  }
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qsq
