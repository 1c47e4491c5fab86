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

// Self-contained invariant suite behind `lbw verify`. Every check builds its
// own small random instances, so no dataset is needed.

#ifndef LBW_TOOLS_VERIFY_H_
#define LBW_TOOLS_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lbw::app {

struct VerifyOptions {
  uint64_t seed = 1;
  // Commit cached margin updates with the wrong sign; the cache check must
  // then fail.
  bool inject_fault = false;
  // RSM Monte-Carlo runs per instance.
  int rsm_runs = 2000;
};

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
  nlohmann::json data;
};

std::vector<CheckResult> RunVerifySuite(const VerifyOptions& options);

// Exhaustive supermodularity scan of a random non-negative linear logistic
// instance of dimension d; d > 13 throws SizeError.
CheckResult ExhaustiveSupermodularCheck(int d, uint64_t seed);

nlohmann::json ToJson(const std::vector<CheckResult>& results);

}  // namespace lbw::app

#endif  // LBW_TOOLS_VERIFY_H_
