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

#include "lbw/optim/single_layer.h"

#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"
#include "lbw/oracle/column_source.h"
#include "lbw/oracle/linear_oracle.h"
#include "lbw/oracle/surrogates.h"
#include "lbw/optim/gcd.h"
#include "lbw/optim/rsm.h"
#include "test_util.h"

namespace lbw {
namespace {

using testing::TestRandom;

BinaryTask RandomTask(TestRandom& r, size_t n, int d) {
  return testing::MakeTask(
      testing::RandomMatrix(n, static_cast<size_t>(d), 0.0, 1.0, r),
      testing::RandomLabels(n, r));
}

LinearOracle PlainOracle(const BinaryTask& task, const BinaryWeightVector& w) {
  return LinearOracle(std::make_shared<DenseColumns>(task.features),
                      std::make_shared<std::vector<double>>(task.y), w);
}

TEST(MultibitCdTest, SingleComponentGcdIsOnePlainPass) {
  TestRandom r(61);
  const auto task = RandomTask(r, 30, 9);
  const auto start = BinaryWeightVector::Create(9, QuantLevels::Symmetric(0.4),
                                                WeightInit::SeededRandom(3));
  Rng rng(1);
  const auto res = MultibitCd(task, MultiComponentWeight::Single(start),
                              Method::kGcd, 1, CoordinateOrder::kAscending, rng);
  auto oracle = PlainOracle(task, start);
  std::vector<int> order(9);
  std::iota(order.begin(), order.end(), 0);
  Gcd(oracle, order);
  EXPECT_EQ(res.weights.component(0), oracle.weights());
  ASSERT_EQ(res.steps.size(), 1u);
  EXPECT_NEAR(res.steps[0].after, oracle.Value(), 1e-9);
}

TEST(MultibitCdTest, SingleComponentRsmIsOnePlainDraw) {
  TestRandom r(62);
  const auto task = RandomTask(r, 30, 9);
  const auto levels = QuantLevels::Symmetric(0.4);
  const auto start = BinaryWeightVector::Create(9, levels, WeightInit::AllAlpha());
  Rng rng(2);
  const auto res = MultibitCd(task, MultiComponentWeight::Single(start),
                              Method::kRsm, 1, CoordinateOrder::kAscending, rng);
  // One draw for the coordinate order, then the plain run on the same stream.
  Rng ref(2);
  ref.NextU64();
  const auto draw = Rsm(FactoryFrom(PlainOracle(task, start)), levels, 9, ref);
  EXPECT_EQ(res.weights.component(0), draw.weights);
  EXPECT_EQ(res.marginal_calls, 18);
}

TEST(MultibitCdTest, TernaryGcdReachesACoordinatewiseMinimum) {
  TestRandom r(63);
  for (int k = 0; k < 5; ++k) {
    const int d = 4;
    const auto task = RandomTask(r, 10, d);
    auto init = MultiComponentWeight::Scheme(d, 2, 1.0, WeightInit::AllAlpha());
    Rng rng(static_cast<uint64_t>(k));
    const auto res = MultibitCd(task, init, Method::kGcd, 30,
                                CoordinateOrder::kAscending, rng);
    const auto x = testing::ToDouble(task.features);
    auto loss = [&](const MultiComponentWeight& m) {
      return testing::NaiveLoss(m.Compose(), x, task.y);
    };
    for (const auto& s : res.steps) EXPECT_LE(s.after, s.before + 1e-12);
    const double final_loss = loss(res.weights);
    EXPECT_LE(final_loss, loss(init) + 1e-12);
    // No single bit flip in any component improves the converged point.
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < d; ++i) {
        auto m = res.weights;
        m.mutable_component(j).Flip(i);
        EXPECT_GE(loss(m), final_loss - 1e-9);
      }
    }
    // And it is no better than the best of all 3^4 ternary vectors.
    double best = 1e300;
    for (int code = 0; code < 81; ++code) {
      std::vector<double> w(d);
      for (int i = 0, c = code; i < d; ++i, c /= 3) w[i] = (c % 3) - 1.0;
      best = std::min(best, testing::NaiveLoss(w, x, task.y));
    }
    EXPECT_GE(final_loss, best - 1e-9);
  }
}

TEST(MultibitCdTest, RsmKeepsTheBestDrawAfterTheFirstSweep) {
  TestRandom r(64);
  const auto task = RandomTask(r, 40, 8);
  auto init = MultiComponentWeight::Scheme(8, 3, 0.3, WeightInit::AllAlpha());
  Rng rng(4);
  const auto res = MultibitCd(task, init, Method::kRsm, 4,
                              CoordinateOrder::kSeededPermutation, rng);
  ASSERT_EQ(res.steps.size(), 12u);
  for (const auto& s : res.steps) {
    if (s.sweep == 0) {
      EXPECT_TRUE(s.replaced);
    } else {
      EXPECT_LE(s.after, s.before);
    }
  }
  // The weighted per-component terms add up to the surrogate.
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    const auto split = MultibitSurrogateSplit(res.weights, j);
    LinearOracle o(std::make_shared<DenseColumns>(task.features),
                   std::make_shared<std::vector<double>>(task.y),
                   res.weights.component(j), {}, split.coef);
    total += split.weight * o.Value();
  }
  EXPECT_NEAR(total, MultibitSurrogateLoss(res.weights, task.features, task.y),
              1e-9);
}

TEST(SingleLayerTest, EvaluateLinearMatchesTheDefinition) {
  TestRandom r(65);
  const auto task = RandomTask(r, 25, 5);
  std::vector<double> w(5);
  for (auto& v : w) v = r.Uniform(-1.0, 1.0);
  const auto x = testing::ToDouble(task.features);
  size_t correct = 0;
  for (size_t s = 0; s < 25; ++s) {
    double z = 0.0;
    for (size_t i = 0; i < 5; ++i) z += w[i] * x(s, i);
    correct += (z > 0 ? 1.0 : -1.0) == task.y[s];
  }
  const auto e = EvaluateLinear(w, task);
  EXPECT_NEAR(e.mean_loss, testing::NaiveLoss(w, x, task.y) / 25.0, 1e-12);
  EXPECT_DOUBLE_EQ(e.accuracy, correct / 25.0);
  EXPECT_THROW(EvaluateLinear({1.0}, task), ShapeError);
}

TEST(SingleLayerTest, TrainingIsSeededAndUsesTheConfiguredLevels) {
  TestRandom r(66);
  const auto train = RandomTask(r, 60, 10);
  const auto test = RandomTask(r, 20, 10);
  for (auto method : {Method::kGcd, Method::kRsm}) {
    SingleLayerConfig cfg;
    cfg.method = method;
    cfg.seed = 5;
    const auto a = TrainSingleLayer(train, test, cfg);
    const auto b = TrainSingleLayer(train, test, cfg);
    EXPECT_EQ(a.weights, b.weights);
    for (double v : a.weights.Compose()) EXPECT_DOUBLE_EQ(std::abs(v), 0.5);
    EXPECT_NEAR(a.train.mean_loss,
                EvaluateLinear(a.weights.Compose(), train).mean_loss, 1e-15);
    cfg.bits = 3;
    const auto multi = TrainSingleLayer(train, test, cfg);
    ASSERT_EQ(multi.weights.num_components(), 3);
    EXPECT_DOUBLE_EQ(multi.weights.scale(), DefaultComponentScale(3));
    cfg.component_scale = 0.2;
    EXPECT_DOUBLE_EQ(TrainSingleLayer(train, test, cfg).weights.scale(), 0.2);
  }
  EXPECT_DOUBLE_EQ(DefaultComponentScale(2), 0.1);
  EXPECT_DOUBLE_EQ(DefaultComponentScale(4), 0.075);
  SingleLayerConfig bad;
  bad.bits = 0;
  EXPECT_THROW(TrainSingleLayer(train, test, bad), ConfigError);
}

}  // namespace
}  // namespace lbw
