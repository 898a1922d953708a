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

#include "qsq/pconcept.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qsq/errors.hpp"

namespace qsq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kMonteCarloBlock = 4096;

double product_pauli_trace(const ProductState& s, const PauliOperator& p) {
  double acc = p.negative() ? -1.0 : 1.0;
  for (std::size_t i = 0; i < p.n() && acc != 0.0; ++i) {
    switch (p.at(i)) {
      case PauliKind::I:
        break;
      case PauliKind::X:
        acc *= s.qubits[i].x;
        break;
      case PauliKind::Y:
        acc *= s.qubits[i].y;
        break;
      case PauliKind::Z:
        acc *= s.qubits[i].z;
        break;
    }
  }
  return acc;
}

struct MomentAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  void merge(const MomentAccumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
  }
  Estimate finish() const {
    Estimate e;
    e.samples = count;
    if (count == 0) return e;
    const double mean = sum / static_cast<double>(count);
    e.value = mean;
    if (count > 1) {
      const double var = std::max(0.0, (sum_sq - static_cast<double>(count) * mean * mean) /
                                           static_cast<double>(count - 1));
      e.std_error = std::sqrt(var / static_cast<double>(count));
    }
    return e;
  }
};

// Mean of g(E) for E ~ D by seeded Monte Carlo, fixed-size blocks with one
// substream per block.
Estimate monte_carlo_mean(const MeasurementDistribution& d, const MonteCarloMode& mode,
                          const std::function<double(const Measurement&)>& g) {
  if (mode.samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  const std::size_t blocks = (mode.samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<MomentAccumulator> partial(blocks);
  run_blocks(blocks, mode.jobs, [&](std::size_t b) {
    Rng rng = substream(mode.seed, Stream::kMonteCarlo, b);
    const std::size_t begin = b * kMonteCarloBlock;
    const std::size_t end = std::min(mode.samples, begin + kMonteCarloBlock);
    for (std::size_t k = begin; k < end; ++k) partial[b].add(g(d.sample(rng)));
  });
  MomentAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total.finish();
}

Estimate exact_estimate(const Rational& r) {
  Estimate e;
  e.value = to_double(r);
  e.exact = r;
  return e;
}

Estimate exact_estimate(double v) {
  Estimate e;
  e.value = v;
  return e;
}

// E_D[g(E)] over the atoms of a finite distribution, exact when every
// g-value is exact.
Estimate finite_mean(const MeasurementDistribution& d,
                     const std::function<std::optional<Rational>(const Measurement&)>& exact_g,
                     const std::function<double(const Measurement&)>& g) {
  bool all_exact = true;
  Rational exact_sum = 0;
  double sum = 0.0;
  d.for_each_atom([&](const Measurement& e, const Rational& w) {
    if (all_exact) {
      if (auto v = exact_g(e)) {
        exact_sum += w * *v;
        return;
      }
      all_exact = false;
      sum = to_double(exact_sum);
    }
    sum += to_double(w) * g(e);
  });
  return all_exact ? exact_estimate(exact_sum) : exact_estimate(sum);
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

BlochVector project_to_ball(const BlochVector& v) {
  const double r = v.norm();
  return r > 1.0 ? v.scaled(1.0 / r) : v;
}

double trace_distance(const BlochVector& a, const BlochVector& b) { return 0.5 * (a - b).norm(); }

BlochVector sample_haar_bloch(Rng& rng) {
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> height(-1.0, 1.0);
  const double phi = azimuth(rng);
  const double cos_theta = height(rng);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return {std::cos(phi) * sin_theta, std::sin(phi) * sin_theta, cos_theta};
}

BlochVector sample_ball_bloch(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BlochVector dir = sample_haar_bloch(rng);
  return dir.scaled(std::cbrt(unit(rng)));
}

// ---------------------------------------------------------------- QuantumState

namespace {

ProductState checked_product(ProductState p) {
  if (p.qubits.empty()) throw std::invalid_argument("product state needs at least one qubit");
  for (const auto& b : p.qubits) {
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.z) ||
        b.norm() > 1.0 + kBlochSlack) {
      throw std::invalid_argument("Bloch vector outside the unit ball");
    }
  }
  return p;
}

MaximallyMixed checked_mixed(MaximallyMixed m) {
  if (m.n == 0) throw std::invalid_argument("maximally mixed state needs n >= 1");
  return m;
}

}  // namespace

QuantumState::QuantumState(ProductState p) : v_(checked_product(std::move(p))) {}

QuantumState::QuantumState(MaximallyMixed m) : v_(checked_mixed(m)) {}

std::size_t QuantumState::n() const {
  return std::visit(Overloaded{[](const StabilizerState& s) { return s.group.n(); },
                               [](const ProductState& p) { return p.qubits.size(); },
                               [](const MaximallyMixed& m) { return m.n; }},
                    v_);
}

BlochVector QuantumState::reduced_bloch(std::size_t qubit) const {
  if (qubit >= n()) throw std::out_of_range("qubit index out of range");
  return std::visit(
      Overloaded{[&](const StabilizerState& s) {
                   const std::size_t n = s.group.n();
                   return BlochVector{
                       static_cast<double>(
                           trace_pauli(s.group, PauliOperator::single(n, qubit, PauliKind::X))),
                       static_cast<double>(
                           trace_pauli(s.group, PauliOperator::single(n, qubit, PauliKind::Y))),
                       static_cast<double>(
                           trace_pauli(s.group, PauliOperator::single(n, qubit, PauliKind::Z)))};
                 },
                 [&](const ProductState& p) { return p.qubits[qubit]; },
                 [](const MaximallyMixed&) { return BlochVector{}; }},
      v_);
}

std::string QuantumState::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{[&](const StabilizerState& s) {
                          out << "stabilizer[";
                          for (std::size_t i = 0; i < s.group.generators().size(); ++i) {
                            out << (i ? "," : "") << s.group.generators()[i].to_string();
                          }
                          out << "]";
                        },
                        [&](const ProductState& p) {
                          out << "product[";
                          for (std::size_t i = 0; i < p.qubits.size(); ++i) {
                            const auto& b = p.qubits[i];
                            out << (i ? "," : "") << "(" << b.x << "," << b.y << "," << b.z << ")";
                          }
                          out << "]";
                        },
                        [&](const MaximallyMixed& m) { out << "maximally_mixed(" << m.n << ")"; }},
             v_);
  return out.str();
}

// ----------------------------------------------------------------- Measurement

Measurement::Measurement(SingleQubitProjector e) {
  if (e.qubit >= e.n) throw std::out_of_range("projector qubit out of range");
  if (std::abs(e.direction.norm() - 1.0) > kBlochSlack) {
    throw std::invalid_argument("projector direction must be a unit Bloch vector");
  }
  v_ = e;
}

std::size_t Measurement::n() const {
  return std::visit(Overloaded{[](const PauliMeasurement& m) { return m.n(); },
                               [](const SingleQubitProjector& p) { return p.n; }},
                    v_);
}

double Measurement::normalized_trace() const {
  return std::visit(Overloaded{[](const PauliMeasurement& m) {
                                 if (m.is_always_accept()) return 1.0;
                                 if (m.is_always_reject()) return 0.0;
                                 return 0.5;
                               },
                               [](const SingleQubitProjector&) { return 0.5; }},
                    v_);
}

std::string Measurement::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{[&](const PauliMeasurement& m) { out << "pauli:" << m.pauli.to_string(); },
                        [&](const SingleQubitProjector& p) {
                          out << "projector:q" << p.qubit << "(" << p.direction.x << ","
                              << p.direction.y << "," << p.direction.z << ")";
                        }},
             v_);
  return out.str();
}

// ---------------------------------------------------- MeasurementDistribution

MeasurementDistribution::MeasurementDistribution(UniformPauli d) : n_(d.n), v_(d) {
  if (d.n == 0) throw std::invalid_argument("distribution needs n >= 1");
}
MeasurementDistribution::MeasurementDistribution(UniformParity d) : n_(d.n), v_(d) {
  if (d.n == 0) throw std::invalid_argument("distribution needs n >= 1");
}
MeasurementDistribution::MeasurementDistribution(HaarSingleQubitProduct d) : n_(d.n), v_(d) {
  if (d.n == 0) throw std::invalid_argument("distribution needs n >= 1");
}
MeasurementDistribution::MeasurementDistribution(FiniteWeighted d) {
  if (d.items.empty()) throw std::invalid_argument("finite distribution needs atoms");
  n_ = d.items.front().first.n();
  double total = 0.0;
  for (const auto& [e, w] : d.items) {
    require_same_n(e.n(), n_, "finite distribution");
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("finite distribution weights must sum to 1");
  }
  v_ = std::move(d);
}

std::size_t MeasurementDistribution::support_size() const {
  constexpr std::size_t kMax = static_cast<std::size_t>(-1);
  return std::visit(Overloaded{[&](const UniformPauli& d) {
                                 return 2 * d.n + 1 >= 64 ? kMax : std::size_t{2} << (2 * d.n);
                               },
                               [&](const UniformParity& d) {
                                 return d.n >= 64 ? kMax : std::size_t{1} << d.n;
                               },
                               [&](const HaarSingleQubitProduct&) { return kMax; },
                               [&](const FiniteWeighted& f) { return f.items.size(); }},
                    v_);
}

Measurement MeasurementDistribution::sample(Rng& rng) const {
  return std::visit(
      Overloaded{[&](const UniformPauli& d) {
                   PauliOperator p(d.n);
                   for (std::size_t i = 0; i < d.n; i += 32) {
                     std::uint64_t bits = rng();
                     for (std::size_t j = i; j < std::min(d.n, i + 32); ++j) {
                       p.set(j, static_cast<PauliKind>(bits & 3u));
                       bits >>= 2;
                     }
                   }
                   if (rng() & 1u) p = p.negated();
                   return Measurement::pauli(std::move(p));
                 },
                 [&](const UniformParity& d) {
                   BitVector x(d.n);
                   for (std::size_t w = 0; w < x.num_words(); ++w) x.word(w) = rng();
                   if (d.n % 64 != 0) {
                     x.word(x.num_words() - 1) &= (std::uint64_t{1} << (d.n % 64)) - 1;
                   }
                   return parity_measurement(x);
                 },
                 [&](const HaarSingleQubitProduct& d) {
                   std::uniform_int_distribution<std::size_t> pick(0, d.n - 1);
                   const std::size_t q = pick(rng);
                   return Measurement::projector(d.n, q, sample_haar_bloch(rng));
                 },
                 [&](const FiniteWeighted& f) {
                   std::uniform_real_distribution<double> u(0.0, 1.0);
                   double target = u(rng);
                   for (const auto& [e, w] : f.items) {
                     if (target < w) return e;
                     target -= w;
                   }
                   // Rounding residue lands on the last atom with positive weight.
                   for (auto it = f.items.rbegin(); it != f.items.rend(); ++it) {
                     if (it->second > 0.0) return it->first;
                   }
                   return f.items.back().first;
                 }},
      v_);
}

void MeasurementDistribution::for_each_atom(
    const std::function<void(const Measurement&, const Rational&)>& fn,
    std::size_t max_atoms) const {
  if (std::holds_alternative<HaarSingleQubitProduct>(v_)) {
    throw ExactUnavailable("Haar single-qubit distribution has no finite atom list");
  }
  if (support_size() > max_atoms) {
    throw BudgetExceeded("distribution support " + kind_name() + " exceeds enumeration budget");
  }
  std::visit(Overloaded{[&](const UniformPauli& d) {
                          const Rational w(1, BigInt(2) << (2 * d.n));
                          const std::uint64_t strings = std::uint64_t{1} << (2 * d.n);
                          for (std::uint64_t idx = 0; idx < strings; ++idx) {
                            fn(Measurement::pauli(PauliOperator::from_index(d.n, idx, false)), w);
                            fn(Measurement::pauli(PauliOperator::from_index(d.n, idx, true)), w);
                          }
                        },
                        [&](const UniformParity& d) {
                          const Rational w(1, BigInt(1) << d.n);
                          const std::uint64_t count = std::uint64_t{1} << d.n;
                          for (std::uint64_t x = 0; x < count; ++x) {
                            fn(parity_measurement(BitVector::from_uint(d.n, x)), w);
                          }
                        },
                        [&](const HaarSingleQubitProduct&) {},
                        [&](const FiniteWeighted& f) {
                          for (const auto& [e, w] : f.items) fn(e, rational_from_double(w));
                        }},
             v_);
}

std::string MeasurementDistribution::kind_name() const {
  return std::visit(Overloaded{[](const UniformPauli&) { return std::string("uniform_pauli"); },
                               [](const UniformParity&) { return std::string("uniform_parity"); },
                               [](const HaarSingleQubitProduct&) {
                                 return std::string("haar_product");
                               },
                               [](const FiniteWeighted&) { return std::string("finite"); }},
                    v_);
}

Measurement parity_measurement(const BitVector& x) {
  return Measurement::pauli(PauliOperator(false, BitVector(x.size()), x));
}

std::optional<BitVector> decode_parity_measurement(const Measurement& e) {
  const auto* m = e.get_if<PauliMeasurement>();
  if (m == nullptr || m->pauli.negative() || !m->pauli.x_bits().none()) return std::nullopt;
  return m->pauli.z_bits();
}

// ------------------------------------------------------------------- f-values

std::optional<Rational> f_value_exact(const QuantumState& rho, const Measurement& e) {
  require_same_n(rho.n(), e.n(), "f_value");
  const auto* m = e.get_if<PauliMeasurement>();
  if (m == nullptr) return std::nullopt;
  if (const auto* s = rho.get_if<StabilizerState>()) return Rational(trace_pauli(s->group, m->pauli));
  if (rho.get_if<MaximallyMixed>() != nullptr) {
    if (!m->pauli.is_identity_up_to_sign()) return Rational(0);
    return Rational(m->pauli.sign());
  }
  return std::nullopt;
}

Estimate monte_carlo_expectation(const MeasurementDistribution& d, const MonteCarloMode& mode,
                                 const std::function<double(const Measurement&)>& g) {
  return monte_carlo_mean(d, mode, g);
}

QuantumState random_product_state(std::size_t n, bool pure, Rng& rng) {
  std::vector<BlochVector> qubits(n);
  for (auto& q : qubits) q = pure ? sample_haar_bloch(rng) : sample_ball_bloch(rng);
  return QuantumState::product(std::move(qubits));
}

double f_value(const QuantumState& rho, const Measurement& e) {
  require_same_n(rho.n(), e.n(), "f_value");
  if (const auto* m = e.get_if<PauliMeasurement>()) {
    // f((I + P)/2) = tr(P rho).
    return std::visit(
        Overloaded{[&](const StabilizerState& s) {
                     return static_cast<double>(trace_pauli(s.group, m->pauli));
                   },
                   [&](const ProductState& p) { return product_pauli_trace(p, m->pauli); },
                   [&](const MaximallyMixed&) {
                     return m->pauli.is_identity_up_to_sign() ? static_cast<double>(m->pauli.sign())
                                                              : 0.0;
                   }},
        rho.variant());
  }
  const auto& proj = std::get<SingleQubitProjector>(e.variant());
  return proj.direction.dot(rho.reduced_bloch(proj.qubit));
}

int sample_label(double f, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < 0.5 * (1.0 + f) ? 1 : -1;
}

int sample_outcome(const QuantumState& rho, const Measurement& e, Rng& rng) {
  return sample_label(f_value(rho, e), rng);
}

// ---------------------------------------------------- inner products, losses

Estimate inner_product(const QuantumState& rho, const QuantumState& sigma,
                       const MeasurementDistribution& d, const EvalMode& mode) {
  require_same_n(rho.n(), sigma.n(), "inner_product");
  require_same_n(rho.n(), d.n(), "inner_product distribution");
  auto g = [&](const Measurement& e) { return f_value(rho, e) * f_value(sigma, e); };
  if (const auto* mc = std::get_if<MonteCarloMode>(&mode)) return monte_carlo_mean(d, *mc, g);

  const std::size_t n = d.n();
  if (d.get_if<UniformPauli>() != nullptr) {
    const auto* s = rho.get_if<StabilizerState>();
    const auto* t = sigma.get_if<StabilizerState>();
    if (s != nullptr && t != nullptr) {
      // (1/4^n) [ |S cap T| - |S cap (-T)| ]
      const auto counts = signed_intersection_counts(s->group, t->group);
      const Rational diff = Rational(BigInt(counts.plus)) - Rational(BigInt(counts.minus));
      return exact_estimate(diff * pow2_rational(-2 * static_cast<int>(n)));
    }
  }
  if (d.get_if<HaarSingleQubitProduct>() != nullptr) {
    // E_u[(u.r)(u.s)] = r.s / 3 for u uniform on the sphere.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += rho.reduced_bloch(i).dot(sigma.reduced_bloch(i));
    return exact_estimate(acc / (3.0 * static_cast<double>(n)));
  }
  return finite_mean(
      d,
      [&](const Measurement& e) -> std::optional<Rational> {
        auto a = f_value_exact(rho, e);
        if (!a) return std::nullopt;
        auto b = f_value_exact(sigma, e);
        if (!b) return std::nullopt;
        return *a * *b;
      },
      g);
}

Estimate squared_loss(const QuantumState& rho, const QuantumState& sigma,
                      const MeasurementDistribution& d, const EvalMode& mode) {
  require_same_n(rho.n(), sigma.n(), "squared_loss");
  require_same_n(rho.n(), d.n(), "squared_loss distribution");
  auto g = [&](const Measurement& e) {
    const double diff = f_value(rho, e) - f_value(sigma, e);
    return diff * diff;
  };
  if (const auto* mc = std::get_if<MonteCarloMode>(&mode)) return monte_carlo_mean(d, *mc, g);

  const std::size_t n = d.n();
  if (d.get_if<UniformPauli>() != nullptr && rho.get_if<StabilizerState>() != nullptr &&
      sigma.get_if<StabilizerState>() != nullptr) {
    const auto rr = inner_product(rho, rho, d, mode);
    const auto ss = inner_product(sigma, sigma, d, mode);
    const auto rs = inner_product(rho, sigma, d, mode);
    return exact_estimate(*rr.exact + *ss.exact - 2 * *rs.exact);
  }
  if (d.get_if<HaarSingleQubitProduct>() != nullptr) {
    // (4/3n) sum_i ||rho_i - sigma_i||_tr^2 with trace distance |r - s|/2.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double td = trace_distance(rho.reduced_bloch(i), sigma.reduced_bloch(i));
      acc += td * td;
    }
    return exact_estimate(4.0 * acc / (3.0 * static_cast<double>(n)));
  }
  return finite_mean(
      d,
      [&](const Measurement& e) -> std::optional<Rational> {
        auto a = f_value_exact(rho, e);
        if (!a) return std::nullopt;
        auto b = f_value_exact(sigma, e);
        if (!b) return std::nullopt;
        const Rational diff = *a - *b;
        return diff * diff;
      },
      g);
}

}  // namespace qsq
