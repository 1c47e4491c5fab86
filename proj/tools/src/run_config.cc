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

#include "run_config.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include "lbw/common/errors.h"

#ifndef LBW_BUILD_ID
#define LBW_BUILD_ID "unknown"
#endif

namespace lbw::app {
namespace {

void RejectUnknownKeys(const nlohmann::json& j,
                       const std::set<std::string>& known,
                       const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

}  // namespace

void RunConfig::Validate() const {
  optimizer.Validate();
  if (bits < 1 || bits > 8) throw ConfigError("bits must be in [1, 8]");
  if (!(level > 0.0)) throw ConfigError("level must be > 0");
  if (!(task.subsample > 0.0 && task.subsample <= 1.0)) {
    throw ConfigError("subsample must be in (0, 1]");
  }
  if (task.dataset != "mnist" && task.dataset != "cifar10") {
    throw ConfigError("dataset must be 'mnist' or 'cifar10'");
  }
  if (task.positive.empty() || task.negative.empty()) {
    throw ConfigError("both class sets must be non-empty");
  }
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (out.empty()) throw ConfigError("output directory must be set");
}

RunConfig DefaultSingleConfig() {
  RunConfig c;
  c.optimizer.plan = MethodPlan::kRsm;
  return c;
}

RunConfig DefaultMlpConfig() {
  RunConfig c;
  c.task.positive = {0, 1, 2, 3, 4};
  c.task.negative = {5, 6, 7, 8, 9};
  c.optimizer.plan = MethodPlan::kGcd;
  c.optimizer.n_iter = 5;
  return c;
}

nlohmann::json ToJson(const RunConfig& c) {
  return {{"data_dir", c.data_dir},
          {"task",
           {{"dataset", c.task.dataset},
            {"positive", c.task.positive},
            {"negative", c.task.negative},
            {"subsample", c.task.subsample},
            {"subsample_seed", c.task.subsample_seed}}},
          {"architecture", c.architecture},
          {"optimizer", ToJson(c.optimizer)},
          {"bits", c.bits},
          {"level", c.level},
          {"component_scale", c.component_scale},
          {"seeds", c.seeds},
          {"out", c.out},
          {"allow_cifar", c.allow_cifar}};
}

RunConfig RunConfigFromJson(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RejectUnknownKeys(j,
                    {"data_dir", "task", "architecture", "optimizer", "bits",
                     "level", "component_scale", "seeds", "out", "allow_cifar"},
                    "run config");
  try {
    c.data_dir = j.value("data_dir", c.data_dir);
    if (j.contains("task")) {
      const auto& t = j.at("task");
      RejectUnknownKeys(t,
                        {"dataset", "positive", "negative", "subsample",
                         "subsample_seed"},
                        "task");
      c.task.dataset = t.value("dataset", c.task.dataset);
      c.task.positive = t.value("positive", c.task.positive);
      c.task.negative = t.value("negative", c.task.negative);
      c.task.subsample = t.value("subsample", c.task.subsample);
      c.task.subsample_seed = t.value("subsample_seed", c.task.subsample_seed);
    }
    c.architecture = j.value("architecture", c.architecture);
    if (j.contains("optimizer")) {
      c.optimizer = OptimizerConfigFromJson(j.at("optimizer"), c.optimizer);
    }
    c.bits = j.value("bits", c.bits);
    c.level = j.value("level", c.level);
    c.component_scale = j.value("component_scale", c.component_scale);
    c.seeds = j.value("seeds", c.seeds);
    c.out = j.value("out", c.out);
    c.allow_cifar = j.value("allow_cifar", c.allow_cifar);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw PathError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " +
                      e.what());
  }
  return RunConfigFromJson(j, std::move(base));
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ConfigHash(const RunConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(ToJson(c).dump())));
  return buf;
}

std::filesystem::path ResolveDataDir(const RunConfig& c) {
  if (!c.data_dir.empty()) return c.data_dir;
  if (const char* env = std::getenv("LBW_DATA_DIR"); env && *env) return env;
  return "data";
}

std::string BuildId() { return LBW_BUILD_ID; }

}  // namespace lbw::app
