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

#include "lbw/optim/config.h"

#include <numeric>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"

namespace lbw {

std::string ToString(Method m) { return m == Method::kGcd ? "gcd" : "rsm"; }

std::string ToString(MethodPlan m) {
  switch (m) {
    case MethodPlan::kGcd:
      return "gcd";
    case MethodPlan::kRsm:
      return "rsm";
    case MethodPlan::kHybrid:
      return "hybrid";
  }
  return "gcd";
}

std::string ToString(CoordinateOrder o) {
  return o == CoordinateOrder::kAscending ? "ascending" : "seeded_permutation";
}

MethodPlan ParseMethodPlan(const std::string& name) {
  if (name == "gcd") return MethodPlan::kGcd;
  if (name == "rsm") return MethodPlan::kRsm;
  if (name == "hybrid") return MethodPlan::kHybrid;
  throw ConfigError("unknown method '" + name +
                    "' (expected gcd, rsm or hybrid)");
}

CoordinateOrder ParseCoordinateOrder(const std::string& name) {
  if (name == "ascending") return CoordinateOrder::kAscending;
  if (name == "seeded_permutation") return CoordinateOrder::kSeededPermutation;
  throw ConfigError("unknown coordinate order '" + name + "'");
}

std::vector<Method> ResolveMethods(MethodPlan plan, int num_layers) {
  std::vector<Method> methods(static_cast<size_t>(num_layers));
  const int first_half = (num_layers + 1) / 2;
  for (int q = 0; q < num_layers; ++q) {
    switch (plan) {
      case MethodPlan::kGcd:
        methods[static_cast<size_t>(q)] = Method::kGcd;
        break;
      case MethodPlan::kRsm:
        methods[static_cast<size_t>(q)] = Method::kRsm;
        break;
      case MethodPlan::kHybrid:
        methods[static_cast<size_t>(q)] =
            q < first_half ? Method::kGcd : Method::kRsm;
        break;
    }
  }
  return methods;
}

void OptimizerConfig::Validate() const {
  if (n_iter < 1) throw ConfigError("n_iter must be >= 1");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (sag.epochs < 0) throw ConfigError("SAG epochs must be >= 0");
  if (sag.lambda < 0.0) throw ConfigError("SAG lambda must be >= 0");
}

nlohmann::json ToJson(const OptimizerConfig& c) {
  return {{"n_iter", c.n_iter},
          {"seed", c.seed},
          {"order", ToString(c.order)},
          {"temperature", c.temperature},
          {"accept_reject", c.accept_reject},
          {"method", ToString(c.plan)},
          {"surrogate", ToString(c.surrogate)},
          {"sag",
           {{"epochs", c.sag.epochs},
            {"lambda", c.sag.lambda},
            {"fit_intercept", c.sag.fit_intercept}}}};
}

OptimizerConfig OptimizerConfigFromJson(const nlohmann::json& j,
                                        OptimizerConfig base) {
  try {
    OptimizerConfig c = base;
    c.n_iter = j.value("n_iter", c.n_iter);
    c.seed = j.value("seed", c.seed);
    if (j.contains("order")) c.order = ParseCoordinateOrder(j.at("order"));
    c.temperature = j.value("temperature", c.temperature);
    c.accept_reject = j.value("accept_reject", c.accept_reject);
    if (j.contains("method")) c.plan = ParseMethodPlan(j.at("method"));
    if (j.contains("surrogate")) {
      c.surrogate = ParseSurrogateVariant(j.at("surrogate"));
    }
    if (j.contains("sag")) {
      const auto& s = j.at("sag");
      c.sag.epochs = s.value("epochs", c.sag.epochs);
      c.sag.lambda = s.value("lambda", c.sag.lambda);
      c.sag.fit_intercept = s.value("fit_intercept", c.sag.fit_intercept);
    }
    c.Validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed optimizer config: ") + e.what());
  }
}

std::vector<int> CoordinateSequence(int d, CoordinateOrder order,
                                    uint64_t seed) {
  std::vector<int> seq(static_cast<size_t>(d));
  std::iota(seq.begin(), seq.end(), 0);
  if (order == CoordinateOrder::kSeededPermutation) {
    Rng rng(seed);
    rng.Shuffle(std::span<int>(seq));
  }
  return seq;
}

}  // namespace lbw
