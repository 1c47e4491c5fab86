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

// Experiment runners behind the train-single, baseline-sag and train-mlp
// subcommands. Every run writes, under cfg.out:
//   manifest.json        command, config, config hash, build id, seeds
//   aggregate.json       per-seed metrics and mean/std (no timing)
//   timing.json          wall-clock seconds per seed
//   seed_<s>/metrics.csv sweep,train_loss,test_loss,test_acc,seconds
// plus weights: seed_<s>/weights.{lbwq,csv} for linear models and a
// seed_<s>/model/ checkpoint for networks.

#ifndef LBW_TOOLS_EXPERIMENTS_H_
#define LBW_TOOLS_EXPERIMENTS_H_

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lbw/dataio/dataset.h"
#include "run_config.h"

namespace lbw::app {

struct TaskPair {
  BinaryTask train;
  BinaryTask test;
};

// Loads the configured dataset and builds the binary tasks. CIFAR-10 needs
// cfg.allow_cifar.
TaskPair LoadTasks(const RunConfig& cfg);

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for one value
};
Summary Summarize(const std::vector<double>& values);

// Each returns the aggregate JSON it wrote. `log` receives one progress line
// per seed.
nlohmann::json RunTrainSingle(const RunConfig& cfg, const TaskPair& tasks,
                              std::ostream& log);
nlohmann::json RunBaselineSag(const RunConfig& cfg, const TaskPair& tasks,
                              std::ostream& log);
nlohmann::json RunTrainMlp(const RunConfig& cfg, const TaskPair& tasks,
                           std::ostream& log);

// Markdown table over run directories, one row per run: final test accuracy
// and loss (mean +- std over seeds) and mean seconds per sweep.
std::string ReportTable(const std::vector<std::string>& run_dirs);

}  // namespace lbw::app

#endif  // LBW_TOOLS_EXPERIMENTS_H_
