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

#ifndef LBW_OPTIM_CONFIG_H_
#define LBW_OPTIM_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lbw/oracle/surrogates.h"

namespace lbw {

enum class Method { kGcd, kRsm };
// Per-network schedule; kHybrid runs GCD on the first ceil(Q/2) quantized
// layers and RSM on the rest.
enum class MethodPlan { kGcd, kRsm, kHybrid };
enum class CoordinateOrder { kAscending, kSeededPermutation };

std::string ToString(Method m);
std::string ToString(MethodPlan m);
std::string ToString(CoordinateOrder o);
MethodPlan ParseMethodPlan(const std::string& name);
CoordinateOrder ParseCoordinateOrder(const std::string& name);

// Method used for each of `num_layers` quantized layers.
std::vector<Method> ResolveMethods(MethodPlan plan, int num_layers);

struct SagConfig {
  int epochs = 20;
  double lambda = 1e-4;
  bool fit_intercept = false;
  uint64_t seed = 0;
};

struct OptimizerConfig {
  int n_iter = 1;
  uint64_t seed = 0;
  CoordinateOrder order = CoordinateOrder::kAscending;
  double temperature = 0.05;
  bool accept_reject = true;
  MethodPlan plan = MethodPlan::kGcd;
  SurrogateVariant surrogate = SurrogateVariant::kNoRelu;
  SagConfig sag;

  // Throws ConfigError when n_iter < 1, temperature <= 0 or epochs < 0.
  void Validate() const;
};

nlohmann::json ToJson(const OptimizerConfig& c);
// Missing keys keep their defaults.
OptimizerConfig OptimizerConfigFromJson(const nlohmann::json& j,
                                        OptimizerConfig base = {});

// 0..d-1, or a permutation drawn from `seed`.
std::vector<int> CoordinateSequence(int d, CoordinateOrder order,
                                    uint64_t seed);

}  // namespace lbw

#endif  // LBW_OPTIM_CONFIG_H_
