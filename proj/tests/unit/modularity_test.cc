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

#include "lbw/oracle/modularity_check.h"

#include <bit>
#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "lbw/common/errors.h"
#include "lbw/oracle/column_source.h"
#include "lbw/oracle/linear_oracle.h"
#include "lbw/oracle/neuron_oracle.h"
#include "test_util.h"

namespace lbw {
namespace {

using testing::TestRandom;

double Popcount(uint64_t mask) { return static_cast<double>(std::popcount(mask)); }

TEST(ModularityCheckTest, ClassifiesTextbookFunctions) {
  const int d = 5;
  const auto convex = EnumerateSetFunction(d, [](uint64_t m) {
    return Popcount(m) * Popcount(m);
  });
  const auto concave = EnumerateSetFunction(d, [](uint64_t m) {
    return std::sqrt(Popcount(m));
  });
  const auto modular = EnumerateSetFunction(d, [](uint64_t m) {
    return 2.0 * Popcount(m & 0b101) - Popcount(m & 0b010);
  });
  EXPECT_TRUE(CheckModularity(convex, d).ok());
  EXPECT_FALSE(CheckModularity(concave, d).ok());
  EXPECT_TRUE(CheckModularity(concave, d, {ModularityKind::kSubmodular}).ok());
  EXPECT_FALSE(CheckModularity(convex, d, {ModularityKind::kSubmodular}).ok());
  EXPECT_TRUE(CheckModularity(modular, d).ok());
  EXPECT_TRUE(CheckModularity(modular, d, {ModularityKind::kSubmodular}).ok());
}

TEST(ModularityCheckTest, CountsEveryTripleAndRecordsExamples) {
  const int d = 4;
  const auto concave = EnumerateSetFunction(d, [](uint64_t m) {
    return std::sqrt(Popcount(m));
  });
  const auto report = CheckModularity(concave, d, {ModularityKind::kSupermodular,
                                                   1e-12, 3});
  // Each element x pairs with 3^(d-1) nested couples B within A.
  EXPECT_EQ(report.triples_checked, 4u * 27u);
  EXPECT_GT(report.violation_count, 3u);
  ASSERT_EQ(report.examples.size(), 3u);
  for (const auto& v : report.examples) {
    EXPECT_EQ(v.smaller & ~v.larger, 0u);
    EXPECT_EQ(v.larger & (1ULL << v.element), 0u);
    const double gain_b = concave[v.smaller | (1ULL << v.element)] - concave[v.smaller];
    const double gain_a = concave[v.larger | (1ULL << v.element)] - concave[v.larger];
    EXPECT_NEAR(v.excess, gain_b - gain_a, 1e-15);
  }
  const auto json = ToJson(report);
  EXPECT_EQ(json.at("kind"), "supermodular");
  EXPECT_EQ(json.at("examples").size(), 3u);
}

TEST(ModularityCheckTest, RefusesLargeOrMalformedInput) {
  EXPECT_THROW(EnumerateSetFunction(14, [](uint64_t) { return 0.0; }), SizeError);
  EXPECT_THROW(CheckModularity(std::vector<double>(8), 4), ShapeError);
  EXPECT_THROW(CheckModularity({}, 0), InvalidDimensionError);
}

TEST(ModularityCheckTest, LogisticLossOnNonNegativeInputsIsSupermodular) {
  TestRandom r(31);
  for (int k = 0; k < 20; ++k) {
    const int d = 6;
    const auto x = testing::RandomMatrix(10, d, 0.0, 1.0, r);
    const auto levels = QuantLevels::Make(r.Uniform(-2.0, 0.0), r.Uniform(0.1, 2.0));
    LinearOracle oracle(std::make_shared<DenseColumns64>(x),
                        std::make_shared<std::vector<double>>(
                            testing::RandomLabels(10, r)),
                        BinaryWeightVector::Create(d, levels, WeightInit::AllAlpha()));
    const auto report = CheckSupermodular(oracle);
    EXPECT_TRUE(report.ok()) << "max excess " << report.max_excess;
  }
}

TEST(ModularityCheckTest, MixedSignInputsCanBreakBothProperties) {
  // Hand-picked: one sample, x = (1, -1), y = +1, levels {-1, 1}.
  Matrix<double> x(1, 2);
  x(0, 0) = 1.0;
  x(0, 1) = -1.0;
  const auto levels = QuantLevels::Symmetric(1.0);
  LinearOracle single(std::make_shared<DenseColumns64>(x),
                      std::make_shared<std::vector<double>>(1, 1.0),
                      BinaryWeightVector::Create(2, levels, WeightInit::AllAlpha()));
  // With opposite-sign inputs the two coordinates act as substitutes.
  EXPECT_FALSE(CheckSupermodular(single).ok());

  TestRandom r(32);
  bool found = false;
  for (int attempt = 0; attempt < 500 && !found; ++attempt) {
    const auto xm = testing::RandomMatrix(6, 4, -1.0, 1.0, r);
    LinearOracle oracle(std::make_shared<DenseColumns64>(xm),
                        std::make_shared<std::vector<double>>(
                            testing::RandomLabels(6, r)),
                        BinaryWeightVector::Create(4, levels, WeightInit::AllAlpha()));
    const auto super = CheckSupermodular(oracle);
    const auto sub = CheckSupermodular(oracle, {ModularityKind::kSubmodular});
    found = !super.ok() && !sub.ok();
  }
  EXPECT_TRUE(found);
}

TEST(ModularityCheckTest, SingleUnitNeuronSurrogatesAreSupermodular) {
  TestRandom r(33);
  for (auto objective : {NeuronObjective::kTangent, NeuronObjective::kNoRelu}) {
    for (int k = 0; k < 15; ++k) {
      const int d = 5;
      const size_t n = 8;
      const auto x = testing::RandomMatrix(n, d, 0.0, 1.0, r);
      std::vector<double> q(n), c(n);
      for (auto& v : q) v = r.Uniform(-2.0, 2.0);
      for (auto& v : c) v = r.Uniform(-2.0, 2.0);
      NeuronProblem problem{std::make_shared<DenseColumns64>(x), 1,
                            std::make_shared<std::vector<double>>(q),
                            std::make_shared<std::vector<double>>(c), {}, 1.0,
                            objective};
      NeuronOracle oracle(problem, BinaryWeightVector::Create(
                                       d, QuantLevels::Make(-1.0, 1.0),
                                       WeightInit::AllAlpha()));
      const auto report = CheckSupermodular(oracle);
      EXPECT_TRUE(report.ok()) << "max excess " << report.max_excess;
    }
  }
}

}  // namespace
}  // namespace lbw
