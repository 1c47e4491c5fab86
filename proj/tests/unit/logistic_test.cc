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

#include "lbw/oracle/logistic.h"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "lbw/common/errors.h"
#include "test_util.h"

namespace lbw {
namespace {

TEST(SoftplusTest, MatchesTheDefinitionInTheSafeRange) {
  for (double u = -25.0; u <= 25.0; u += 0.37) {
    EXPECT_NEAR(Softplus(u), std::log1p(std::exp(u)), 1e-12 * (1 + std::abs(u)));
  }
}

TEST(SoftplusTest, StaysFiniteForExtremeArguments) {
  EXPECT_DOUBLE_EQ(Softplus(1000.0), 1000.0);
  EXPECT_GT(Softplus(-1000.0), -1e-300);
  EXPECT_LT(Softplus(-1000.0), 1e-300);
  EXPECT_TRUE(std::isfinite(Softplus(710.0)));
  // Both branches agree with the definition just past the switch point.
  EXPECT_NEAR(Softplus(31.0), std::log1p(std::exp(31.0)), 1e-12);
  EXPECT_NEAR(Softplus(-31.0), std::log1p(std::exp(-31.0)), 1e-25);
}

TEST(SigmoidTest, IsSymmetricAndSaturates) {
  for (double u = -40.0; u <= 40.0; u += 1.3) {
    EXPECT_NEAR(Sigmoid(u) + Sigmoid(-u), 1.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(Sigmoid(0.0), 0.5);
  EXPECT_EQ(Sigmoid(-800.0), 0.0);
  EXPECT_EQ(Sigmoid(800.0), 1.0);
}

TEST(LogisticLossTest, SumsPerSampleTerms) {
  testing::TestRandom r(3);
  std::vector<double> z(50);
  for (auto& v : z) v = r.Uniform(-8.0, 8.0);
  const auto y = testing::RandomLabels(50, r);
  double expected = 0.0;
  for (size_t s = 0; s < z.size(); ++s) {
    expected += testing::NaiveLogistic(y[s], z[s]);
  }
  EXPECT_NEAR(LogisticLoss(z, y), expected, 1e-10);
  // At zero margin every sample costs log 2.
  const std::vector<double> zero(4, 0.0);
  const std::vector<double> ys = {1, -1, 1, -1};
  EXPECT_NEAR(LogisticLoss(zero, ys), 4 * std::log(2.0), 1e-14);
}

TEST(LogisticLossTest, RejectsBadInput) {
  const std::vector<double> z = {1.0, 2.0};
  const std::vector<double> y = {1.0};
  EXPECT_THROW(LogisticLoss(z, y), ShapeError);
  const std::vector<double> nan = {std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(LogisticLoss(nan, y), NumericError);
}

TEST(ZeroOneTest, TiesCountAsErrorsAndPredictNegative) {
  const std::vector<double> z = {2.0, -1.0, 0.0, 0.0, -3.0};
  const std::vector<double> y = {1.0, 1.0, 1.0, -1.0, -1.0};
  EXPECT_DOUBLE_EQ(ZeroOneLoss(z, y), 3.0);
  // A zero margin predicts -1, so the fourth sample is correct.
  EXPECT_DOUBLE_EQ(Accuracy(z, y), 3.0 / 5.0);
  EXPECT_EQ(PredictLabel(0.0), -1.0);
}

}  // namespace
}  // namespace lbw
