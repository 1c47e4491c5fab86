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

#ifndef LBW_OPTIM_GCD_H_
#define LBW_OPTIM_GCD_H_

#include <span>
#include <vector>

#include "lbw/oracle/set_function.h"

namespace lbw {

struct GcdResult {
  double initial_value = 0.0;
  double final_value = 0.0;
  int flips = 0;
  // Oracle value after each kept flip (only when requested).
  std::vector<double> trace;
};

// One greedy pass: for each coordinate in `order`, flip it and keep the flip
// unless the loss strictly increases. Works in place on `oracle`.
GcdResult Gcd(SetFunctionOracle& oracle, std::span<const int> order,
              bool record_trace = false);

}  // namespace lbw

#endif  // LBW_OPTIM_GCD_H_
