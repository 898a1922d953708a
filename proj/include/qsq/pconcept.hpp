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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qsq/pauli.hpp"
#include "qsq/random.hpp"
#include "qsq/rational.hpp"
#include "qsq/stabilizer.hpp"

namespace qsq {

// Bloch coordinates of the single-qubit state (I + xX + yY + zZ)/2.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](std::size_t axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](std::size_t axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
  BlochVector scaled(double s) const { return {x * s, y * s, z * s}; }
  friend BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

inline constexpr double kBlochSlack = 1e-12;

// Radial projection onto the closed unit ball.
BlochVector project_to_ball(const BlochVector& v);

// Trace distance between two single-qubit states: half the Euclidean distance.
double trace_distance(const BlochVector& a, const BlochVector& b);

// phi uniform on [0, 2pi), cos(theta) uniform on [-1, 1].
BlochVector sample_haar_bloch(Rng& rng);
// Uniform in the unit ball: Haar direction with radius U^{1/3}.
BlochVector sample_ball_bloch(Rng& rng);

struct StabilizerState {
  StabilizerGroup group;
};
struct ProductState {
  std::vector<BlochVector> qubits;
};
struct MaximallyMixed {
  std::size_t n = 0;
};

class QuantumState {
 public:
  using Variant = std::variant<StabilizerState, ProductState, MaximallyMixed>;

  QuantumState(StabilizerGroup group) : v_(StabilizerState{std::move(group)}) {}
  QuantumState(StabilizerState s) : v_(std::move(s)) {}
  // Throws if any Bloch vector has norm above 1 + kBlochSlack.
  QuantumState(ProductState p);
  QuantumState(MaximallyMixed m);

  static QuantumState product(std::vector<BlochVector> qubits) {
    return QuantumState(ProductState{std::move(qubits)});
  }
  static QuantumState maximally_mixed(std::size_t n) { return QuantumState(MaximallyMixed{n}); }

  std::size_t n() const;
  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  // Bloch vector of the reduced state on `qubit`.
  BlochVector reduced_bloch(std::size_t qubit) const;

  std::string describe() const;

 private:
  Variant v_;
};

// Projector I^{(x)i} (x) (I + u.sigma)/2 (x) I^{(x)(n-i-1)} for a unit Bloch vector u.
struct SingleQubitProjector {
  std::size_t n = 0;
  std::size_t qubit = 0;
  BlochVector direction;
};

class Measurement {
 public:
  using Variant = std::variant<PauliMeasurement, SingleQubitProjector>;

  Measurement(PauliMeasurement e) : v_(std::move(e)) {}
  // Throws if the direction is not a unit vector within kBlochSlack.
  Measurement(SingleQubitProjector e);

  static Measurement pauli(PauliOperator p) { return Measurement(PauliMeasurement{std::move(p)}); }
  static Measurement projector(std::size_t n, std::size_t qubit, BlochVector u) {
    return Measurement(SingleQubitProjector{n, qubit, u});
  }

  std::size_t n() const;
  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  // tr(E) / 2^n.
  double normalized_trace() const;

  std::string describe() const;

 private:
  Variant v_;
};

// Uniform over all 2.4^n Pauli measurements, including E = I and E = 0.
struct UniformPauli {
  std::size_t n = 0;
};
// Uniform over the parity measurements E_x = (I + Z^x)/2, x in {0,1}^n (x = 0 included).
struct UniformParity {
  std::size_t n = 0;
};
// Pick a qubit uniformly, then a Haar-random single-qubit projector on it.
struct HaarSingleQubitProduct {
  std::size_t n = 0;
};
struct FiniteWeighted {
  std::vector<std::pair<Measurement, double>> items;
};

class MeasurementDistribution {
 public:
  using Variant = std::variant<UniformPauli, UniformParity, HaarSingleQubitProduct, FiniteWeighted>;

  MeasurementDistribution(UniformPauli d);
  MeasurementDistribution(UniformParity d);
  MeasurementDistribution(HaarSingleQubitProduct d);
  // Throws unless weights are non-negative, sum to 1 within 1e-12, and all
  // measurements share n.
  MeasurementDistribution(FiniteWeighted d);

  std::size_t n() const { return n_; }
  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  bool is_finite() const { return !std::holds_alternative<HaarSingleQubitProduct>(v_); }
  // Number of atoms of a finite distribution (saturates at SIZE_MAX).
  std::size_t support_size() const;

  Measurement sample(Rng& rng) const;

  // Visits every atom with its exact probability. Throws ExactUnavailable for
  // the continuous Haar distribution and BudgetExceeded above max_atoms.
  void for_each_atom(const std::function<void(const Measurement&, const Rational&)>& fn,
                     std::size_t max_atoms = kDefaultMaxAtoms) const;

  std::string kind_name() const;

  static constexpr std::size_t kDefaultMaxAtoms = std::size_t{1} << 22;

 private:
  std::size_t n_ = 0;
  Variant v_;
};

// Parity measurement E_x = (I + P_x)/2 with P_x = (x)_i Z^{x_i}.
Measurement parity_measurement(const BitVector& x);
// Inverse of parity_measurement; nullopt if E is not a parity measurement.
std::optional<BitVector> decode_parity_measurement(const Measurement& e);

// Product state with every qubit drawn from sample_haar_bloch (pure) or
// sample_ball_bloch (mixed).
QuantumState random_product_state(std::size_t n, bool pure, Rng& rng);

// f_rho(E) = 2 tr(E rho) - 1.
double f_value(const QuantumState& rho, const Measurement& e);
// Exact rational f-value when available (stabilizer or maximally mixed state
// against a Pauli measurement).
std::optional<Rational> f_value_exact(const QuantumState& rho, const Measurement& e);

// Y = +1 with probability tr(E rho), -1 otherwise.
int sample_outcome(const QuantumState& rho, const Measurement& e, Rng& rng);
// Same, for an already-known f-value.
int sample_label(double f, Rng& rng);

struct ExactMode {};
struct MonteCarloMode {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};
using EvalMode = std::variant<ExactMode, MonteCarloMode>;

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;       // zero for exact results
  std::optional<Rational> exact;
  std::size_t samples = 0;      // zero for exact results
};

// E_{E~D}[g(E)] by seeded Monte Carlo in fixed blocks of samples, one
// substream per block, so the estimate does not depend on mode.jobs.
Estimate monte_carlo_expectation(const MeasurementDistribution& d, const MonteCarloMode& mode,
                                 const std::function<double(const Measurement&)>& g);

// <f_rho, f_sigma>_D = E_{E~D}[f_rho(E) f_sigma(E)].
Estimate inner_product(const QuantumState& rho, const QuantumState& sigma,
                       const MeasurementDistribution& d, const EvalMode& mode);

// ||f_rho - f_sigma||^2_D.
Estimate squared_loss(const QuantumState& rho, const QuantumState& sigma,
                      const MeasurementDistribution& d, const EvalMode& mode);

}  // namespace qsq
