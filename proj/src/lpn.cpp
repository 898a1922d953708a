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

#include "qsq/lpn.hpp"

#include <bit>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "qsq/errors.hpp"
#include "qsq/pconcept.hpp"

namespace qsq {

namespace {

BitVector random_bits(std::size_t n, Rng& rng) {
  BitVector v(n);
  for (std::size_t w = 0; w < v.num_words(); ++w) v.word(w) = rng();
  if (n % 64 != 0) v.word(v.num_words() - 1) &= (std::uint64_t{1} << (n % 64)) - 1;
  return v;
}

void require_bits(std::size_t n) {
  if (n == 0) throw std::invalid_argument("LPN dimension must be positive");
  if (n > kMaxExhaustiveLpnBits) {
    throw BudgetExceeded("exhaustive LPN search supports n <= " +
                         std::to_string(kMaxExhaustiveLpnBits) + ", got " + std::to_string(n));
  }
}

// Collects minimizers of a disagreement score visited in arbitrary order.
class MinimizerTracker {
 public:
  explicit MinimizerTracker(std::size_t m) : spectrum_(m + 1, 0) {}

  void visit(std::uint64_t candidate, std::size_t disagreements) {
    ++spectrum_[disagreements];
    if (disagreements < best_) {
      best_ = disagreements;
      ties_.clear();
      tie_count_ = 0;
    }
    if (disagreements == best_) {
      ++tie_count_;
      ties_.insert(candidate);
      if (ties_.size() > kMaxReportedTies) ties_.erase(std::prev(ties_.end()));
    }
  }

  ExhaustiveLPNResult finish(std::size_t n) {
    ExhaustiveLPNResult r;
    r.best = BitVector::from_uint(n, *ties_.begin());
    r.best_disagreements = best_;
    r.tie_count = tie_count_;
    for (std::uint64_t t : ties_) r.ties.push_back(BitVector::from_uint(n, t));
    r.spectrum = std::move(spectrum_);
    return r;
  }

 private:
  std::size_t best_ = SIZE_MAX;
  std::size_t tie_count_ = 0;
  std::set<std::uint64_t> ties_;
  std::vector<std::size_t> spectrum_;
};

}  // namespace

LPNInstance make_planted_lpn(std::size_t n, std::size_t m, double eta, Rng& rng) {
  if (n == 0) throw std::invalid_argument("LPN dimension must be positive");
  if (!(eta >= 0.0 && eta < 0.5)) throw std::invalid_argument("LPN eta must be in [0, 1/2)");
  LPNInstance inst;
  inst.n = n;
  inst.eta = eta;
  inst.secret = random_bits(n, rng);
  std::bernoulli_distribution flip(eta);
  inst.examples.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    BitVector x = random_bits(n, rng);
    const bool clean = x.dot(*inst.secret);
    const bool noisy = eta > 0.0 ? (clean != flip(rng)) : clean;
    inst.examples.push_back(LPNExample{std::move(x), noisy});
  }
  return inst;
}

std::string lpn_to_json(const LPNInstance& instance) {
  nlohmann::json j;
  j["n"] = instance.n;
  j["eta"] = instance.eta;
  j["examples"] = nlohmann::json::array();
  for (const auto& ex : instance.examples) {
    j["examples"].push_back(nlohmann::json::array({ex.x.to_string(), ex.label ? 1 : 0}));
  }
  if (instance.secret) j["secret"] = instance.secret->to_string();
  return j.dump();
}

namespace {

LPNInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("LPN instance must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "eta" && key != "examples" && key != "secret") {
      throw std::invalid_argument("unknown LPN field '" + key + "'");
    }
  }
  LPNInstance inst;
  inst.n = j.at("n").get<std::size_t>();
  inst.eta = j.at("eta").get<double>();
  for (const auto& e : j.at("examples")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("LPN example must be [bits, bit]");
    BitVector x = BitVector::from_string(e[0].get<std::string>());
    const int b = e[1].get<int>();
    if (x.size() != inst.n) throw DimensionMismatch("LPN example length differs from n");
    if (b != 0 && b != 1) throw std::invalid_argument("LPN label must be 0 or 1");
    inst.examples.push_back(LPNExample{std::move(x), b == 1});
  }
  if (j.contains("secret")) {
    BitVector s = BitVector::from_string(j["secret"].get<std::string>());
    if (s.size() != inst.n) throw DimensionMismatch("LPN secret length differs from n");
    inst.secret = std::move(s);
  }
  return inst;
}

}  // namespace

LPNInstance lpn_from_json(std::string_view text) {
  try {
    return instance_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed LPN instance: ") + e.what());
  }
}

std::vector<LabeledExample> make_lpn_as_state_learning(const LPNInstance& instance) {
  std::vector<LabeledExample> out;
  out.reserve(instance.examples.size());
  for (const auto& ex : instance.examples) {
    require_same_n(ex.x.size(), instance.n, "make_lpn_as_state_learning");
    out.push_back(LabeledExample{parity_measurement(ex.x), ex.label ? -1 : 1});
  }
  return out;
}

std::vector<LPNExample> decode_state_learning_dataset(const std::vector<LabeledExample>& data) {
  std::vector<LPNExample> out;
  out.reserve(data.size());
  for (const auto& ex : data) {
    auto x = decode_parity_measurement(ex.measurement);
    if (!x) throw std::invalid_argument("not a parity measurement: " + ex.measurement.describe());
    if (ex.label != 1 && ex.label != -1) throw std::invalid_argument("label must be +/-1");
    out.push_back(LPNExample{std::move(*x), ex.label == -1});
  }
  return out;
}

ParitySolution gaussian_elimination_parity(const std::vector<LPNExample>& data, std::size_t n) {
  if (n == 0) throw std::invalid_argument("LPN dimension must be positive");
  // Augmented rows [x | b].
  std::vector<BitVector> rows;
  rows.reserve(data.size());
  for (const auto& ex : data) {
    require_same_n(ex.x.size(), n, "gaussian_elimination_parity");
    BitVector r(n + 1);
    for (std::size_t w = 0; w < ex.x.num_words(); ++w) r.word(w) = ex.x.word(w);
    r.set(n, ex.label);
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t pick = rank;
    while (pick < rows.size() && !rows[pick].get(col)) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rows[r].get(n)) throw InconsistentSystem("parity system has no solution");
  }
  ParitySolution sol;
  sol.particular = BitVector(n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < rank; ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular.set(pivots[r], rows[r].get(n));
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f, true);
    for (std::size_t r = 0; r < rank; ++r) {
      if (rows[r].get(f)) v.set(pivots[r], true);
    }
    sol.null_basis.push_back(std::move(v));
  }
  sol.unique = sol.null_basis.empty();
  return sol;
}

ExhaustiveLPNResult exhaustive_lpn_solver(const LPNInstance& instance) {
  const std::size_t n = instance.n;
  require_bits(n);
  const std::size_t m = instance.examples.size();
  const std::size_t words = (m + 63) / 64;
  // columns[j] has bit k set when example k has x_j = 1.
  std::vector<std::vector<std::uint64_t>> columns(n, std::vector<std::uint64_t>(words, 0));
  std::vector<std::uint64_t> labels(words, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& ex = instance.examples[k];
    require_same_n(ex.x.size(), n, "exhaustive_lpn_solver");
    for (std::size_t j = 0; j < n; ++j) {
      if (ex.x.get(j)) columns[j][k >> 6] |= std::uint64_t{1} << (k & 63);
    }
    if (ex.label) labels[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
  std::vector<std::uint64_t> parity(words, 0);
  auto disagreements = [&] {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words; ++w) d += std::popcount(parity[w] ^ labels[w]);
    return d;
  };
  MinimizerTracker tracker(m);
  std::uint64_t candidate = 0;
  tracker.visit(candidate, disagreements());
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int j = std::countr_zero(step);
    candidate ^= std::uint64_t{1} << j;
    for (std::size_t w = 0; w < words; ++w) parity[w] ^= columns[j][w];
    tracker.visit(candidate, disagreements());
  }
  return tracker.finish(n);
}

ExhaustiveLPNResult parity_state_ml_solver(const std::vector<LabeledExample>& data, std::size_t n) {
  require_bits(n);
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::int64_t> s(size, 0);
  for (const auto& ex : decode_state_learning_dataset(data)) {
    require_same_n(ex.x.size(), n, "parity_state_ml_solver");
    s[ex.x.to_uint()] += ex.label ? -1 : 1;
  }
  // s[y] <- sum_x s[x] (-1)^{x.y}, and f_y(E_x) = (-1)^{x.y} on basis states.
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t k = i; k < i + h; ++k) {
        const std::int64_t a = s[k];
        const std::int64_t b = s[k + h];
        s[k] = a + b;
        s[k + h] = a - b;
      }
    }
  }
  const auto m = static_cast<std::int64_t>(data.size());
  MinimizerTracker tracker(data.size());
  for (std::size_t y = 0; y < size; ++y) {
    tracker.visit(y, static_cast<std::size_t>((m - s[y]) / 2));
  }
  return tracker.finish(n);
}

}  // namespace qsq
