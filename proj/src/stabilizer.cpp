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

#include "qsq/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsq/errors.hpp"

namespace qsq {

namespace {

bool column_bit(const PauliOperator& p, std::size_t column) {
  const std::size_t n = p.n();
  return column < n ? p.x_bits().get(column) : p.z_bits().get(column - n);
}

// Product of two commuting real-signed Paulis.
PauliOperator commuting_product(const PauliOperator& a, const PauliOperator& b) {
  return pauli_product(a, b).to_signed();
}

}  // namespace

StabilizerGroup::StabilizerGroup(std::vector<PauliOperator> generators) {
  if (generators.empty()) throw std::invalid_argument("stabilizer group needs generators");
  n_ = generators.front().n();
  if (n_ == 0) throw std::invalid_argument("stabilizer group needs at least one qubit");
  for (const auto& g : generators) require_same_n(g.n(), n_, "StabilizerGroup");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (!commutes(generators[i], generators[j])) {
        throw std::invalid_argument("stabilizer generators must commute: " +
                                    generators[i].to_string() + " vs " +
                                    generators[j].to_string());
      }
    }
  }

  std::vector<PauliOperator> rows = std::move(generators);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < 2 * n_ && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !column_bit(rows[p], c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && column_bit(rows[i], c)) rows[i] = commuting_product(rows[i], rows[rank]);
    }
    pivots_.push_back(c);
    ++rank;
  }
  // Rows past the rank reduced to +/-I.
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (rows[i].negative()) throw std::invalid_argument("generators produce -I");
  }
  if (rank != n_) {
    throw std::invalid_argument("generators span a group of order 2^" + std::to_string(rank) +
                                ", need 2^" + std::to_string(n_));
  }
  rows.resize(rank);
  generators_ = std::move(rows);
}

StabilizerGroup StabilizerGroup::parse(std::string_view tableau_text) {
  std::vector<PauliOperator> gens;
  std::istringstream in{std::string(tableau_text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    gens.push_back(PauliOperator::parse(std::string_view(line).substr(b, e - b + 1)));
  }
  return StabilizerGroup(std::move(gens));
}

StabilizerGroup StabilizerGroup::basis_state(const BitVector& y) {
  std::vector<PauliOperator> gens;
  gens.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    gens.push_back(PauliOperator::single(y.size(), i, PauliKind::Z, y.get(i)));
  }
  return StabilizerGroup(std::move(gens));
}

void StabilizerGroup::for_each_element(
    const std::function<void(const PauliOperator&)>& fn) const {
  if (n_ > 20) throw BudgetExceeded("element walk limited to n <= 20");
  PauliOperator current(n_);
  fn(current);
  const std::uint64_t total = std::uint64_t{1} << n_;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(k));
    current = commuting_product(current, generators_[flip]);
    fn(current);
  }
}

std::vector<PauliOperator> StabilizerGroup::elements() const {
  std::vector<PauliOperator> out;
  out.reserve(std::size_t{1} << n_);
  for_each_element([&](const PauliOperator& p) { out.push_back(p); });
  return out;
}

std::string StabilizerGroup::to_string() const {
  std::string out;
  for (const auto& g : generators_) {
    out += g.to_string();
    out += '\n';
  }
  return out;
}

std::strong_ordering operator<=>(const StabilizerGroup& a, const StabilizerGroup& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return a.generators_ <=> b.generators_;
}

Membership contains(const StabilizerGroup& s, const PauliOperator& p) {
  require_same_n(s.n(), p.n(), "contains");
  // In reduced echelon form the coefficient of generator k is P's bit at
  // generator k's pivot column.
  PauliOperator acc(s.n());
  const auto& gens = s.generators();
  const auto& pivots = s.pivot_columns();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (column_bit(p, pivots[k])) acc = commuting_product(acc, gens[k]);
  }
  if (acc.x_bits() != p.x_bits() || acc.z_bits() != p.z_bits()) return Membership::Absent;
  return acc.negative() == p.negative() ? Membership::Plus : Membership::Minus;
}

int trace_pauli(const StabilizerGroup& s, const PauliOperator& p) {
  switch (contains(s, p)) {
    case Membership::Plus:
      return 1;
    case Membership::Minus:
      return -1;
    case Membership::Absent:
      return 0;
  }
  return 0;
}

Rational trace_measurement(const StabilizerGroup& s, const PauliMeasurement& e) {
  return Rational(1 + trace_pauli(s, e.pauli), 2);
}

SignedIntersection signed_intersection_counts(const StabilizerGroup& s,
                                              const StabilizerGroup& t) {
  require_same_n(s.n(), t.n(), "signed_intersection_counts");
  SignedIntersection out;
  s.for_each_element([&](const PauliOperator& p) {
    switch (contains(t, p)) {
      case Membership::Plus:
        ++out.plus;
        break;
      case Membership::Minus:
        ++out.minus;
        break;
      case Membership::Absent:
        break;
    }
  });
  return out;
}

std::vector<StabilizerGroup> enumerate_stabilizer_groups(std::size_t n) {
  if (n == 0) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > kMaxEnumerationQubits) {
    throw BudgetExceeded("stabilizer enumeration is limited to n <= " +
                         std::to_string(kMaxEnumerationQubits));
  }
  // Candidates: every real-signed non-identity Pauli.
  std::vector<PauliOperator> candidates;
  const std::uint64_t strings = std::uint64_t{1} << (2 * n);
  for (std::uint64_t idx = 1; idx < strings; ++idx) {
    candidates.push_back(PauliOperator::from_index(n, idx, false));
    candidates.push_back(PauliOperator::from_index(n, idx, true));
  }

  std::set<StabilizerGroup> found;
  std::vector<PauliOperator> chosen;
  // Extends a commuting, independent, -I-free list in increasing candidate
  // order. A candidate whose negation is already generated would add -I and is
  // pruned; one already generated is redundant.
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (chosen.size() == n) {
      found.insert(StabilizerGroup(chosen));
      return;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
      const auto& cand = candidates[c];
      bool ok = true;
      for (const auto& g : chosen) {
        if (!commutes(g, cand)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // Membership in the partial group <chosen>: walk its elements.
      bool generated = false;
      if (!chosen.empty()) {
        PauliOperator acc(n);
        const std::uint64_t total = std::uint64_t{1} << chosen.size();
        for (std::uint64_t k = 1; k < total && !generated; ++k) {
          acc = commuting_product(acc, chosen[static_cast<std::size_t>(std::countr_zero(k))]);
          generated = acc.x_bits() == cand.x_bits() && acc.z_bits() == cand.z_bits();
        }
      }
      if (generated) continue;
      chosen.push_back(cand);
      extend(c + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return {found.begin(), found.end()};
}

}  // namespace qsq
