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

#include "lbw/optim/gcd.h"

#include "lbw/common/errors.h"

namespace lbw {

GcdResult Gcd(SetFunctionOracle& oracle, std::span<const int> order,
              bool record_trace) {
  GcdResult result;
  result.initial_value = oracle.Value();
  if (record_trace) result.trace.push_back(result.initial_value);
  for (int i : order) {
    if (i < 0 || i >= oracle.dimension()) {
      throw OutOfRangeError("coordinate " + std::to_string(i) +
                            " outside the weight vector");
    }
    if (oracle.Marginal(i) <= 0.0) {
      oracle.ApplyFlip(i);
      ++result.flips;
      if (record_trace) result.trace.push_back(oracle.Value());
    }
  }
  result.final_value = oracle.Value();
  return result;
}

}  // namespace lbw
