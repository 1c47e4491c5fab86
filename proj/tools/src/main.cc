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

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.h"
#include "lbw/common/errors.h"
#include "run_config.h"
#include "verify.h"

namespace {

using lbw::app::RunConfig;

// Flags shared by the training subcommands. Values are applied on top of
// the subcommand defaults and the --config file, only when given.
struct RunFlags {
  std::string config;
  std::string data_dir;
  std::string dataset;
  std::string arch;
  std::string method;
  std::string surrogate;
  std::string order;
  std::string out;
  uint64_t seed = 0;
  std::vector<uint64_t> seeds;
  int num_seeds = 0;
  int bits = 1;
  int n_iter = 1;
  int epochs = 20;
  double subsample = 1.0;
  double temperature = 0.05;
  double component_scale = 0.0;
  bool allow_cifar = false;
  bool no_accept_reject = false;

  CLI::App* app = nullptr;
  bool Given(const std::string& name) const { return app->count(name) > 0; }
};

void AddRunFlags(CLI::App* app, RunFlags& f, bool network) {
  f.app = app;
  app->add_option("--config", f.config, "JSON run config")
      ->check(CLI::ExistingFile);
  app->add_option("--data-dir", f.data_dir,
                  "dataset root (default: $LBW_DATA_DIR)");
  app->add_option("--dataset", f.dataset, "mnist or cifar10");
  app->add_option("--seed", f.seed, "single seed");
  app->add_option("--seeds", f.seeds, "comma-separated seeds")
      ->delimiter(',');
  app->add_option("--num-seeds", f.num_seeds, "use seeds 0..N-1");
  app->add_option("--bits", f.bits, "bit width B");
  app->add_option("--method", f.method, "gcd, rsm or hybrid");
  app->add_option("--order", f.order, "ascending or seeded_permutation");
  app->add_option("--n-iter", f.n_iter, "outer sweeps");
  app->add_option("--subsample", f.subsample, "training fraction in (0, 1]");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--epochs", f.epochs, "SAG epochs");
  app->add_flag("--allow-cifar", f.allow_cifar,
                "permit CIFAR-10 runs (long running)");
  if (network) {
    app->add_option("--arch", f.arch,
                    "fc2, fc3, lenet5, cnn6 or an architecture JSON file");
    app->add_option("--surrogate", f.surrogate, "tangent or no_relu");
    app->add_option("--temperature", f.temperature,
                    "accept-reject temperature");
    app->add_flag("--no-accept-reject", f.no_accept_reject,
                  "always keep row updates");
  } else {
    app->add_option("--component-scale", f.component_scale,
                    "scale of each multi-bit component");
  }
}

RunConfig Resolve(const RunFlags& f, RunConfig c) {
  if (!f.config.empty()) c = lbw::app::LoadRunConfig(f.config, c);
  if (f.Given("--data-dir")) c.data_dir = f.data_dir;
  if (f.Given("--dataset")) {
    c.task.dataset = f.dataset;
    if (f.dataset == "cifar10") {
      // The CIFAR-10 task is classes 0-2 against 3-5 for every model.
      c.task.positive = {0, 1, 2};
      c.task.negative = {3, 4, 5};
      if (c.architecture == "fc2") c.architecture = "lenet5";
    }
  }
  if (f.Given("--seed")) c.seeds = {f.seed};
  if (f.Given("--seeds")) c.seeds = f.seeds;
  if (f.Given("--num-seeds")) {
    c.seeds.clear();
    for (int s = 0; s < f.num_seeds; ++s) c.seeds.push_back(s);
  }
  if (f.Given("--bits")) c.bits = f.bits;
  if (f.Given("--method")) c.optimizer.plan = lbw::ParseMethodPlan(f.method);
  if (f.Given("--order")) c.optimizer.order = lbw::ParseCoordinateOrder(f.order);
  if (f.Given("--n-iter")) c.optimizer.n_iter = f.n_iter;
  if (f.Given("--subsample")) c.task.subsample = f.subsample;
  if (f.Given("--out")) c.out = f.out;
  if (f.Given("--epochs")) c.optimizer.sag.epochs = f.epochs;
  if (f.Given("--allow-cifar")) c.allow_cifar = true;
  if (f.app->get_option_no_throw("--arch") && f.Given("--arch")) {
    c.architecture = f.arch;
  }
  if (f.app->get_option_no_throw("--surrogate") && f.Given("--surrogate")) {
    c.optimizer.surrogate = lbw::ParseSurrogateVariant(f.surrogate);
  }
  if (f.app->get_option_no_throw("--temperature") &&
      f.Given("--temperature")) {
    c.optimizer.temperature = f.temperature;
  }
  if (f.app->get_option_no_throw("--no-accept-reject") &&
      f.Given("--no-accept-reject")) {
    c.optimizer.accept_reject = false;
  }
  if (f.app->get_option_no_throw("--component-scale") &&
      f.Given("--component-scale")) {
    c.component_scale = f.component_scale;
  }
  c.Validate();
  return c;
}

int RunVerify(bool inject_fault, int exhaustive_d, uint64_t seed,
              int rsm_runs, const std::string& json_path) {
  if (exhaustive_d > 0) {
    const auto r = lbw::app::ExhaustiveSupermodularCheck(exhaustive_d, seed);
    std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
    return r.ok ? 0 : 1;
  }
  lbw::app::VerifyOptions options;
  options.seed = seed;
  options.inject_fault = inject_fault;
  options.rsm_runs = rsm_runs;
  const auto results = lbw::app::RunVerifySuite(options);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
    all = all && r.ok;
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw lbw::PathError("cannot write " + json_path);
    out << lbw::app::ToJson(results).dump(2) << "\n";
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-bit-width network training by combinatorial optimization"};
  app.require_subcommand(1);

  RunFlags single_flags;
  auto* single = app.add_subcommand(
      "train-single", "single-layer binary / multi-bit linear classifier");
  AddRunFlags(single, single_flags, /*network=*/false);

  RunFlags sag_flags;
  auto* sag = app.add_subcommand("baseline-sag",
                                 "full-precision logistic regression by SAG");
  AddRunFlags(sag, sag_flags, /*network=*/false);

  RunFlags mlp_flags;
  auto* mlp = app.add_subcommand("train-mlp", "layerwise network training");
  AddRunFlags(mlp, mlp_flags, /*network=*/true);

  bool inject_fault = false;
  int exhaustive_d = 0;
  uint64_t verify_seed = 1;
  int rsm_runs = 2000;
  std::string verify_json;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt margin-cache updates (the cache check must fail)");
  verify->add_option("--exhaustive-d", exhaustive_d,
                     "only run an exhaustive supermodularity scan at this d");
  verify->add_option("--seed", verify_seed, "instance seed");
  verify->add_option("--rsm-runs", rsm_runs, "RSM runs per instance");
  verify->add_option("--json", verify_json, "write the report as JSON");

  std::vector<std::string> report_dirs;
  std::string report_out;
  auto* report = app.add_subcommand(
      "report", "Markdown table over run directories");
  report->add_option("runs", report_dirs, "run output directories")
      ->required();
  report->add_option("--out", report_out, "write the table to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (single->parsed() || sag->parsed()) {
      const bool is_single = single->parsed();
      const auto cfg =
          Resolve(is_single ? single_flags : sag_flags,
                  lbw::app::DefaultSingleConfig());
      const auto tasks = lbw::app::LoadTasks(cfg);
      std::cerr << "train " << tasks.train.n() << " / test " << tasks.test.n()
                << " samples, d = " << tasks.train.d() << "\n";
      const auto agg = is_single
                           ? lbw::app::RunTrainSingle(cfg, tasks, std::cerr)
                           : lbw::app::RunBaselineSag(cfg, tasks, std::cerr);
      std::cout << agg.at("summary").dump(2) << "\n";
      return 0;
    }
    if (mlp->parsed()) {
      const auto cfg = Resolve(mlp_flags, lbw::app::DefaultMlpConfig());
      const auto tasks = lbw::app::LoadTasks(cfg);
      std::cerr << "train " << tasks.train.n() << " / test " << tasks.test.n()
                << " samples, d = " << tasks.train.d() << "\n";
      const auto agg = lbw::app::RunTrainMlp(cfg, tasks, std::cerr);
      std::cout << agg.at("summary").dump(2) << "\n";
      return 0;
    }
    if (verify->parsed()) {
      return RunVerify(inject_fault, exhaustive_d, verify_seed, rsm_runs,
                       verify_json);
    }
    if (report->parsed()) {
      const auto table = lbw::app::ReportTable(report_dirs);
      if (report_out.empty()) {
        std::cout << table;
      } else {
        std::ofstream out(report_out);
        if (!out) throw lbw::PathError("cannot write " + report_out);
        out << table;
      }
      return 0;
    }
  } catch (const lbw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
