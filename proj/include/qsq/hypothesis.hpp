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
#include <optional>
#include <vector>

#include "qsq/bits.hpp"
#include "qsq/pconcept.hpp"
#include "qsq/sq_oracle.hpp"

namespace qsq {

struct LearnedHypothesis {
  QuantumState state;
  // Queries issued by the learner itself; wrappers may spend more underneath.
  std::size_t queries_used = 0;
  std::vector<TranscriptEntry> transcript;
  // Set by the computational-basis learner.
  std::optional<BitVector> basis_bits;
};

}  // namespace qsq
