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

#include "lbw/optim/train.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"
#include "lbw/netmodel/architecture.h"
#include "lbw/oracle/set_function.h"
#include "lbw/optim/gcd.h"
#include "test_util.h"

namespace lbw {
namespace {

using testing::TestRandom;

// Labels from a hidden linear rule on strictly positive inputs.
BinaryTask RuleTask(TestRandom& r, size_t n, int d) {
  const auto x = testing::RandomMatrix(n, static_cast<size_t>(d), 0.05, 1.0, r);
  std::vector<double> y(n);
  for (size_t s = 0; s < n; ++s) {
    double z = 0.0;
    for (int i = 0; i < d; ++i) z += (i % 3 == 0 ? 1.0 : -0.5) * x(s, i);
    y[s] = z > 0.0 ? 1.0 : -1.0;
  }
  return testing::MakeTask(x, y);
}

double NaiveNetworkLoss(const NetworkModel& m, const BinaryTask& task) {
  double total = 0.0;
  for (size_t s = 0; s < task.n(); ++s) {
    std::vector<double> x(task.features.row(s).begin(), task.features.row(s).end());
    total += testing::NaiveLogistic(task.y[s], m.Forward(x));
  }
  return total;
}

NetworkModel SmallFc2(TestRandom& r, int d, int bits) {
  auto m = NetworkModel::Create({"fc2", {LayerConfig::Dense(4)}}, {1, 1, d}, bits, 3);
  std::vector<double> a(4);
  for (auto& v : a) v = r.Uniform(-1.0, 1.0);
  m.set_output(a, 0.0);
  return m;
}

TEST(EvaluateNetworkTest, MatchesPerSampleForward) {
  TestRandom r(71);
  const auto task = RuleTask(r, 20, 6);
  const auto m = SmallFc2(r, 6, 1);
  const auto e = EvaluateNetwork(m, task);
  EXPECT_NEAR(e.mean_loss, NaiveNetworkLoss(m, task) / 20.0, 1e-12);
}

TEST(TrainLayerTest, SingleHiddenLayerGcdIsGreedyOnTheTrueLoss) {
  TestRandom r(72);
  const int d = 6;
  const auto task = RuleTask(r, 25, d);
  auto model = SmallFc2(r, d, 1);

  // Reference: per row, one greedy pass on the network loss evaluated by
  // running the whole network, other rows fixed.
  auto reference = model;
  for (int k = 0; k < 4; ++k) {
    FunctionOracle oracle(
        [&](const BinaryWeightVector& w) {
          auto probe = reference;
          probe.SetRow(0, k, MultiComponentWeight::Single(w));
          return NaiveNetworkLoss(probe, task);
        },
        reference.row(0, k).component(0));
    const auto order = CoordinateSequence(d, CoordinateOrder::kAscending, 0);
    Gcd(oracle, order);
    reference.SetRow(0, k, MultiComponentWeight::Single(oracle.weights()));
  }

  const double start_loss = NaiveNetworkLoss(model, task);
  OptimizerConfig cfg;
  cfg.accept_reject = false;
  Rng rng(1);
  const auto trace = model.ForwardBatch(task.features);
  const auto stats = TrainLayer(model, task, trace, 0, Method::kGcd, cfg, rng);
  EXPECT_EQ(stats.updates, 4);
  EXPECT_EQ(stats.reverted, 0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(model.row(0, k), reference.row(0, k)) << k;
  EXPECT_NEAR(stats.objective_change,
              (NaiveNetworkLoss(model, task) - start_loss) / 25.0, 1e-9);
}

TEST(TrainLayerTest, TinyTemperatureRejectsEveryIncrease) {
  TestRandom r(73);
  const int d = 8;
  const auto task = RuleTask(r, 40, d);
  for (int bits : {1, 2}) {
    auto model = SmallFc2(r, d, bits);
    OptimizerConfig cfg;
    cfg.temperature = 1e-300;
    Rng rng(2);
    const auto trace = model.ForwardBatch(task.features);
    const auto stats = TrainLayer(model, task, trace, 0, Method::kRsm, cfg, rng);
    EXPECT_EQ(stats.updates, 4 * bits);
    EXPECT_LE(stats.objective_change, 0.0);
  }
}

TEST(TrainLayerTest, GcdNeverIncreasesTheSingleLayerLoss) {
  TestRandom r(74);
  const int d = 7;
  const auto task = RuleTask(r, 30, d);
  for (int bits : {1, 2, 3}) {
    auto model = SmallFc2(r, d, bits);
    const double before = NaiveNetworkLoss(model, task);
    OptimizerConfig cfg;
    Rng rng(3);
    const auto trace = model.ForwardBatch(task.features);
    const auto stats = TrainLayer(model, task, trace, 0, Method::kGcd, cfg, rng);
    const double after = NaiveNetworkLoss(model, task);
    EXPECT_LE(after, before + 1e-9);
    EXPECT_EQ(stats.reverted, 0);
    EXPECT_NEAR(stats.objective_change, (after - before) / 30.0, 1e-9);
  }
}

TEST(TrainNetworkTest, ReportsEverySweepAndIsDeterministic) {
  TestRandom r(75);
  const int d = 10;
  const auto train = RuleTask(r, 60, d);
  const auto test = RuleTask(r, 30, d);
  OptimizerConfig cfg;
  cfg.n_iter = 2;
  cfg.plan = MethodPlan::kHybrid;
  cfg.seed = 4;
  cfg.sag.epochs = 5;
  const Architecture arch{"t", {LayerConfig::Dense(5), LayerConfig::Dense(3)}};
  auto run = [&] {
    auto model = NetworkModel::Create(arch, {1, 1, d}, 1, 11);
    return std::make_pair(TrainNetwork(model, train, test, cfg), model);
  };
  const auto [a, model_a] = run();
  const auto [b, model_b] = run();
  ASSERT_EQ(a.sweeps.size(), 3u);
  EXPECT_EQ(a.layer_methods, (std::vector<std::string>{"gcd", "rsm"}));
  EXPECT_EQ(ToJson(a, false), ToJson(b, false));
  EXPECT_EQ(model_a.output_weights(), model_b.output_weights());
  for (int k = 0; k < 5; ++k) EXPECT_EQ(model_a.row(0, k), model_b.row(0, k));
  EXPECT_EQ(a.sweeps[0].updates, 0);
  EXPECT_EQ(a.sweeps[1].updates, 8);
  // The recorded losses are those of the returned model.
  EXPECT_NEAR(a.final_record().train_loss,
              NaiveNetworkLoss(model_a, train) / 60.0, 1e-12);
  EXPECT_DOUBLE_EQ(a.final_record().test_acc, EvaluateNetwork(model_a, test).accuracy);

  const auto json = ToJson(a, false);
  EXPECT_FALSE(json.at("sweeps")[0].contains("seconds"));
  EXPECT_TRUE(ToJson(a).at("sweeps")[0].contains("seconds"));
  std::ostringstream csv;
  AppendCsvRows(a, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(std::string(kTrainCsvHeader), "sweep,train_loss,test_loss,test_acc,seconds");
}

TEST(TrainNetworkTest, TwoLayerEntryPointChecksTheModel) {
  TestRandom r(76);
  const auto task = RuleTask(r, 10, 4);
  auto deep = NetworkModel::Create(BuiltinArchitecture("fc3"), {1, 1, 4}, 1, 1);
  EXPECT_THROW(TrainTwoLayer(deep, task, task, {}), ConfigError);
  auto shallow = NetworkModel::Create(BuiltinArchitecture("fc2"), {1, 1, 4}, 1, 1);
  OptimizerConfig cfg;
  cfg.sag.epochs = 2;
  EXPECT_EQ(TrainTwoLayer(shallow, task, task, cfg).sweeps.size(), 2u);
  cfg.temperature = -1.0;
  EXPECT_THROW(TrainTwoLayer(shallow, task, task, cfg), ConfigError);
  const auto wrong = RuleTask(r, 10, 5);
  EXPECT_THROW(TrainTwoLayer(shallow, wrong, wrong, {}), ShapeError);
}

}  // namespace
}  // namespace lbw
