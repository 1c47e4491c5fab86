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

#include "lbw/optim/rsm.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "lbw/common/errors.h"

namespace lbw {

RsmResult Rsm(const OracleFactory& factory, QuantLevels levels, int d,
              std::span<const int> order, Rng& rng,
              const RsmObserver& observer) {
  if (static_cast<int>(order.size()) != d) {
    throw ConfigError("RSM needs an order covering all coordinates");
  }
  auto lower = factory(BinaryWeightVector::Create(d, levels,
                                                  WeightInit::AllAlpha()));
  auto upper = factory(BinaryWeightVector::Create(d, levels,
                                                  WeightInit::AllBeta()));
  RsmResult result{lower->weights(), 0.0, 0, 0, 0};
  int step = 0;
  for (int i : order) {
    if (observer) observer(step++, lower->weights(), upper->weights());
    const double a = std::max(0.0, -lower->Marginal(i));
    const double b = std::max(0.0, -upper->Marginal(i));
    const double p = a + b > 0.0 ? a / (a + b) : 1.0;
    if (rng.Uniform() < p) {
      lower->ApplyFlip(i);
      ++result.e_steps;
    } else {
      upper->ApplyFlip(i);
      ++result.f_steps;
    }
  }
  if (!(lower->weights() == upper->weights())) {
    throw Error("RSM frontiers did not meet; order must be a permutation");
  }
  result.weights = lower->weights();
  result.value = lower->Value();
  result.marginal_calls = lower->marginal_calls() + upper->marginal_calls();
  return result;
}

RsmResult Rsm(const OracleFactory& factory, QuantLevels levels, int d,
              Rng& rng) {
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  return Rsm(factory, levels, d, order, rng);
}

}  // namespace lbw
