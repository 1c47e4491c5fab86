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

// Randomized double greedy for supermodular minimization. Two frontiers
// start at all-alpha (E) and all-beta (F). At coordinate i
//   a = g(E) - g(E + i),  b = g(F) - g(F - i)
// and with probability max(a,0) / (max(a,0) + max(b,0)) E takes beta at i,
// otherwise F takes alpha at i. When both clipped gains are zero E moves.
// After the last coordinate E == F.

#ifndef LBW_OPTIM_RSM_H_
#define LBW_OPTIM_RSM_H_

#include <cstdint>
#include <functional>
#include <span>

#include "lbw/common/rng.h"
#include "lbw/oracle/set_function.h"

namespace lbw {

struct RsmResult {
  BinaryWeightVector weights;
  double value = 0.0;
  int e_steps = 0;  // coordinates resolved by moving E
  int f_steps = 0;
  int64_t marginal_calls = 0;  // summed over both frontiers
};

// Called before each step with the step index and both frontiers.
using RsmObserver = std::function<void(int step, const BinaryWeightVector& e,
                                       const BinaryWeightVector& f)>;

RsmResult Rsm(const OracleFactory& factory, QuantLevels levels, int d,
              std::span<const int> order, Rng& rng,
              const RsmObserver& observer = nullptr);
// Ascending coordinate order.
RsmResult Rsm(const OracleFactory& factory, QuantLevels levels, int d,
              Rng& rng);

}  // namespace lbw

#endif  // LBW_OPTIM_RSM_H_
