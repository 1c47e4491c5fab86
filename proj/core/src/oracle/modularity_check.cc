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

#include "lbw/oracle/modularity_check.h"

#include <algorithm>
#include <string>

#include "lbw/common/errors.h"

namespace lbw {
namespace {

void CheckSize(int d) {
  if (d < 1) throw InvalidDimensionError("exhaustive check needs d >= 1");
  if (d > kMaxExhaustiveDimension) {
    throw SizeError("exhaustive check refused for d = " + std::to_string(d) +
                    " (limit " + std::to_string(kMaxExhaustiveDimension) +
                    ")");
  }
}

}  // namespace

std::vector<double> EnumerateSetFunction(
    int d, const std::function<double(uint64_t)>& f) {
  CheckSize(d);
  const uint64_t count = uint64_t{1} << d;
  std::vector<double> table(count);
  for (uint64_t mask = 0; mask < count; ++mask) table[mask] = f(mask);
  return table;
}

ModularityReport CheckModularity(const std::vector<double>& table, int d,
                                 const ModularityOptions& options) {
  CheckSize(d);
  const uint64_t full = (uint64_t{1} << d) - 1;
  if (table.size() != full + 1) {
    throw ShapeError("set-function table must have 2^d entries");
  }
  ModularityReport report;
  report.kind = options.kind;
  report.dimension = d;
  report.tolerance = options.tolerance;
  const bool super = options.kind == ModularityKind::kSupermodular;

  for (int x = 0; x < d; ++x) {
    const uint64_t bit = uint64_t{1} << x;
    const uint64_t rest = full & ~bit;
    // A ranges over subsets of the ground set without x; B over subsets of A.
    for (uint64_t a = rest;; a = (a - 1) & rest) {
      const double gain_a = table[a | bit] - table[a];
      for (uint64_t b = a;; b = (b - 1) & a) {
        const double gain_b = table[b | bit] - table[b];
        const double excess = super ? gain_b - gain_a : gain_a - gain_b;
        ++report.triples_checked;
        if (excess > options.tolerance) {
          ++report.violation_count;
          report.max_excess = std::max(report.max_excess, excess);
          if (report.examples.size() < options.max_recorded) {
            report.examples.push_back({b, a, x, excess});
          }
        }
        if (b == 0) break;
      }
      if (a == 0) break;
    }
  }
  return report;
}

ModularityReport CheckSupermodular(const SetFunctionOracle& oracle,
                                   const ModularityOptions& options) {
  const int d = oracle.dimension();
  const auto levels = oracle.weights().levels();
  const auto table = EnumerateSetFunction(d, [&](uint64_t mask) {
    return oracle.Evaluate(BinaryWeightVector::FromMask(mask, d, levels));
  });
  return CheckModularity(table, d, options);
}

nlohmann::json ToJson(const ModularityReport& report) {
  nlohmann::json examples = nlohmann::json::array();
  for (const auto& v : report.examples) {
    examples.push_back({{"smaller_mask", v.smaller},
                        {"larger_mask", v.larger},
                        {"element", v.element},
                        {"excess", v.excess}});
  }
  return {{"kind", report.kind == ModularityKind::kSupermodular
                       ? "supermodular"
                       : "submodular"},
          {"dimension", report.dimension},
          {"tolerance", report.tolerance},
          {"triples_checked", report.triples_checked},
          {"violations", report.violation_count},
          {"max_excess", report.max_excess},
          {"examples", examples}};
}

}  // namespace lbw
