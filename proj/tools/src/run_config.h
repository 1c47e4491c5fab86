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

#ifndef LBW_TOOLS_RUN_CONFIG_H_
#define LBW_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lbw/optim/config.h"

namespace lbw::app {

struct TaskSpec {
  std::string dataset = "mnist";  // "mnist" or "cifar10"
  std::vector<int> positive = {0, 1, 2};
  std::vector<int> negative = {3, 4, 5};
  // Fraction of the training set kept (stratified); the test set is whole.
  double subsample = 1.0;
  uint64_t subsample_seed = 0;
};

struct RunConfig {
  std::string data_dir;  // empty: $LBW_DATA_DIR
  TaskSpec task;
  std::string architecture = "fc2";  // builtin name or JSON file
  OptimizerConfig optimizer;
  int bits = 1;
  double level = 0.5;            // single-layer binary levels +-level
  double component_scale = 0.0;  // single-layer multi-bit, <= 0: default
  std::vector<uint64_t> seeds = {0};
  std::string out = "lbw_out";
  bool allow_cifar = false;

  // Throws ConfigError on inconsistent values.
  void Validate() const;
};

// Defaults per subcommand.
RunConfig DefaultSingleConfig();
RunConfig DefaultMlpConfig();

nlohmann::json ToJson(const RunConfig& c);
// Missing keys keep the values of `base`; unknown keys throw ConfigError.
RunConfig RunConfigFromJson(const nlohmann::json& j, RunConfig base);
RunConfig LoadRunConfig(const std::filesystem::path& path, RunConfig base);

// 64-bit FNV-1a of the compact JSON form, as 16 hex digits.
std::string ConfigHash(const RunConfig& c);
uint64_t Fnv1a64(std::string_view bytes);

// Data root: the config value, else $LBW_DATA_DIR, else "data".
std::filesystem::path ResolveDataDir(const RunConfig& c);

// Build identifier baked in at configure time.
std::string BuildId();

}  // namespace lbw::app

#endif  // LBW_TOOLS_RUN_CONFIG_H_
