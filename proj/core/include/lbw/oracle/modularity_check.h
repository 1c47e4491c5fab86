// Copyright 2026 The Authors.
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

// Exhaustive checks of the increasing/diminishing-returns inequalities.
// For every B subset of A, a proper subset of the ground set, and x outside
// A, supermodularity requires
//   f(B + x) - f(B) <= f(A + x) - f(A)
// and submodularity the reverse.

#ifndef LBW_ORACLE_MODULARITY_CHECK_H_
#define LBW_ORACLE_MODULARITY_CHECK_H_

#include <cstdint>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "lbw/oracle/set_function.h"

namespace lbw {

// Largest ground set accepted; the table has 2^d entries and the scan
// d * 3^(d-1) triples.
inline constexpr int kMaxExhaustiveDimension = 13;

enum class ModularityKind { kSupermodular, kSubmodular };

struct ModularityViolation {
  uint64_t smaller = 0;  // B as a bit mask
  uint64_t larger = 0;   // A as a bit mask
  int element = 0;       // x
  double excess = 0.0;   // amount by which the inequality fails
};

struct ModularityReport {
  ModularityKind kind = ModularityKind::kSupermodular;
  int dimension = 0;
  double tolerance = 0.0;
  uint64_t triples_checked = 0;
  uint64_t violation_count = 0;
  double max_excess = 0.0;
  // First violations found, capped at `max_recorded`.
  std::vector<ModularityViolation> examples;

  bool ok() const { return violation_count == 0; }
};

struct ModularityOptions {
  ModularityKind kind = ModularityKind::kSupermodular;
  double tolerance = 1e-9;
  size_t max_recorded = 16;
};

// Values of f over all 2^d subsets, indexed by bit mask (bit i <=> element i).
// Throws SizeError when d > kMaxExhaustiveDimension.
std::vector<double> EnumerateSetFunction(
    int d, const std::function<double(uint64_t)>& f);

ModularityReport CheckModularity(const std::vector<double>& table, int d,
                                 const ModularityOptions& options = {});

// Evaluates `oracle` at every pattern (oracle levels, bit set <=> beta).
ModularityReport CheckSupermodular(const SetFunctionOracle& oracle,
                                   const ModularityOptions& options = {});

nlohmann::json ToJson(const ModularityReport& report);

}  // namespace lbw

#endif  // LBW_ORACLE_MODULARITY_CHECK_H_
