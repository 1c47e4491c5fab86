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

#include <cmath>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "lbw/common/errors.h"
#include "lbw/oracle/column_source.h"
#include "lbw/oracle/linear_oracle.h"
#include "lbw/oracle/margin_cache.h"
#include "lbw/oracle/neuron_oracle.h"
#include "lbw/oracle/set_function.h"
#include "test_util.h"

namespace lbw {
namespace {

using testing::TestRandom;

struct LinearInstance {
  Matrix<double> x;  // float-exact values
  std::vector<double> y;
  std::vector<double> offset;
  double coef;
  QuantLevels levels;
};

LinearInstance RandomInstance(TestRandom& r, size_t n, int d, double zero_rate) {
  auto x = testing::ToDouble(testing::ToFloat(
      testing::RandomMatrix(n, static_cast<size_t>(d), 0.0, 1.0, r)));
  for (auto& v : x.data()) {
    if (r.Uniform(0.0, 1.0) < zero_rate) v = 0.0;
  }
  std::vector<double> offset(n);
  for (auto& v : offset) v = r.Uniform(-1.0, 1.0);
  return {x, testing::RandomLabels(n, r), offset, r.Uniform(0.5, 2.0),
          QuantLevels::Make(r.Uniform(-1.0, 0.0), r.Uniform(0.1, 1.5))};
}

// sum_s log(1 + exp(-y_s (offset_s + coef <w, x_s>))) from the definition.
double ReferenceValue(const LinearInstance& in, const std::vector<double>& w) {
  double total = 0.0;
  for (size_t s = 0; s < in.x.rows(); ++s) {
    double z = 0.0;
    for (size_t i = 0; i < w.size(); ++i) z += w[i] * in.x(s, i);
    total += testing::NaiveLogistic(in.y[s], in.offset[s] + in.coef * z);
  }
  return total;
}

LinearOracle MakeOracle(const LinearInstance& in, uint64_t mask,
                        OracleOptions options = {}) {
  const int d = static_cast<int>(in.x.cols());
  return LinearOracle(std::make_shared<DenseColumns64>(in.x),
                      std::make_shared<std::vector<double>>(in.y),
                      BinaryWeightVector::FromMask(mask, d, in.levels),
                      in.offset, in.coef, options);
}

TEST(LinearOracleTest, ValueAndMarginalsMatchTheReference) {
  TestRandom r(21);
  for (int k = 0; k < 10; ++k) {
    const int d = 6;
    const auto in = RandomInstance(r, 15, d, 0.3);
    const uint64_t start = static_cast<uint64_t>(r.Int(0, 63));
    auto oracle = MakeOracle(in, start);
    const auto w0 = testing::MaskWeights(start, d, in.levels.alpha, in.levels.beta);
    EXPECT_NEAR(oracle.Value(), ReferenceValue(in, w0), 1e-10);
    for (int i = 0; i < d; ++i) {
      const auto w1 = testing::MaskWeights(start ^ (1ULL << i), d,
                                           in.levels.alpha, in.levels.beta);
      EXPECT_NEAR(oracle.Marginal(i), ReferenceValue(in, w1) - ReferenceValue(in, w0),
                  1e-10);
    }
    // Marginal queries leave the state alone.
    EXPECT_EQ(oracle.weights().LowMask(), start);
    EXPECT_EQ(oracle.marginal_calls(), d);
  }
}

TEST(LinearOracleTest, FlipsTrackTheReferenceAcrossRefreshes) {
  TestRandom r(22);
  const int d = 8;
  const auto in = RandomInstance(r, 20, d, 0.4);
  OracleOptions options;
  options.refresh_interval = 7;
  auto oracle = MakeOracle(in, 0, options);
  uint64_t mask = 0;
  for (int t = 0; t < 100; ++t) {
    const int i = r.Int(0, d - 1);
    if (t % 2 == 0) oracle.Marginal(r.Int(0, d - 1));  // stale proposals are fine
    oracle.ApplyFlip(i);
    mask ^= 1ULL << i;
    ASSERT_EQ(oracle.weights().LowMask(), mask);
    EXPECT_NEAR(oracle.Value(),
                ReferenceValue(in, testing::MaskWeights(mask, d, in.levels.alpha,
                                                        in.levels.beta)),
                1e-9);
  }
  EXPECT_EQ(oracle.cache().total_flips(), 100);
  EXPECT_EQ(oracle.cache().refresh_count(), 100 / 7);
  EXPECT_LT(oracle.cache().MaxDrift(), 1e-12);
}

TEST(LinearOracleTest, EvaluateAndCloneAreIndependentOfState) {
  TestRandom r(23);
  const int d = 5;
  const auto in = RandomInstance(r, 12, d, 0.0);
  auto oracle = MakeOracle(in, 0b10101);
  const auto other = BinaryWeightVector::FromMask(0b01100, d, in.levels);
  const double expected = ReferenceValue(
      in, testing::MaskWeights(0b01100, d, in.levels.alpha, in.levels.beta));
  EXPECT_NEAR(oracle.Evaluate(other), expected, 1e-10);
  const auto clone = oracle.CloneAt(other);
  EXPECT_NEAR(clone->Value(), expected, 1e-10);
  EXPECT_EQ(oracle.weights().LowMask(), 0b10101u);
  const auto factory = FactoryFrom(oracle);
  EXPECT_NEAR(factory(other)->Value(), expected, 1e-10);
}

TEST(LinearOracleTest, InjectedSignFaultCorruptsTheCache) {
  TestRandom r(24);
  const auto in = RandomInstance(r, 10, 4, 0.0);
  OracleOptions options;
  options.inject_sign_fault = true;
  options.refresh_interval = 1 << 20;
  auto oracle = MakeOracle(in, 0, options);
  oracle.ApplyFlip(1);
  EXPECT_GT(oracle.cache().MaxDrift(), 1e-3);
}

TEST(LinearOracleTest, RejectsLabelCountMismatch) {
  TestRandom r(25);
  const auto in = RandomInstance(r, 10, 4, 0.0);
  EXPECT_THROW(
      LinearOracle(std::make_shared<DenseColumns64>(in.x),
                   std::make_shared<std::vector<double>>(3, 1.0),
                   BinaryWeightVector::Create(4, in.levels, WeightInit::AllAlpha())),
      ShapeError);
}

TEST(MarginCacheTest, ProposalSkipsZeroInputs) {
  Matrix<double> x(3, 2);
  x(0, 0) = 1.0;
  x(2, 0) = 0.5;
  x(1, 1) = 2.0;
  MarginCache cache(std::make_shared<DenseColumns64>(x),
                    BinaryWeightVector::Create(2, QuantLevels::ZeroOne(),
                                               WeightInit::AllAlpha()),
                    {}, 1.0);
  MarginCache::Proposal p;
  cache.Propose(0, p);
  EXPECT_EQ(p.rows, (std::vector<uint32_t>{0, 2}));
  EXPECT_EQ(p.margins, (std::vector<double>{1.0, 0.5}));
  cache.Commit(p);
  EXPECT_EQ(std::vector<double>(cache.margins().begin(), cache.margins().end()),
            (std::vector<double>{1.0, 0.0, 0.5}));
}

TEST(ConvColumnsTest, ColumnsAreIm2ColWithZeroPadding) {
  // Two samples of a 2-channel 3x3 image, kernel 2, stride 1, padding 1.
  Matrix<double> maps(2, 18);
  for (size_t s = 0; s < 2; ++s) {
    for (size_t k = 0; k < 18; ++k) maps(s, k) = 100.0 * s + k + 1;
  }
  const ConvGeometry g{{2, 3, 3}, 2, 1, 1};
  ASSERT_EQ(g.positions(), 16);
  ConvColumns cols(maps, g);
  EXPECT_EQ(cols.num_rows(), 32u);
  EXPECT_EQ(cols.num_cols(), 8);
  std::vector<double> scratch;
  for (int j = 0; j < 8; ++j) {
    const int c = j / 4;
    const int ky = (j / 2) % 2;
    const int kx = j % 2;
    const auto col = cols.Column(j, scratch);
    for (int s = 0; s < 2; ++s) {
      for (int oy = 0; oy < 4; ++oy) {
        for (int ox = 0; ox < 4; ++ox) {
          const int iy = oy - 1 + ky;
          const int ix = ox - 1 + kx;
          const double expected =
              (iy < 0 || iy > 2 || ix < 0 || ix > 2)
                  ? 0.0
                  : maps(s, static_cast<size_t>(c * 9 + iy * 3 + ix));
          EXPECT_EQ(col[static_cast<size_t>(s * 16 + oy * 4 + ox)], expected);
        }
      }
    }
  }
  EXPECT_THROW(ConvColumns(Matrix<double>(1, 17), g), ShapeError);
  EXPECT_THROW(ConvColumns(maps, ConvGeometry{{2, 3, 3}, 5, 1, 0}), ShapeError);
}

// sum_s softplus(c_s + sum_u g(q_u, t_u)) with t_u = offset_u + coef <w, x_u>
// and g the exact ReLU contribution or the linear one for negative q.
double NeuronReference(const Matrix<double>& x, const std::vector<double>& q,
                       const std::vector<double>& c,
                       const std::vector<double>& offset, double coef, int per,
                       const std::vector<double>& w, bool relu_everywhere) {
  double total = 0.0;
  for (size_t s = 0; s < c.size(); ++s) {
    double inner = c[s];
    for (int p = 0; p < per; ++p) {
      const size_t u = s * static_cast<size_t>(per) + static_cast<size_t>(p);
      double t = offset[u];
      for (size_t i = 0; i < w.size(); ++i) t += coef * w[i] * x(u, i);
      const bool relu = relu_everywhere || q[u] >= 0.0;
      inner += q[u] * (relu ? std::max(t, 0.0) : t);
    }
    total += std::log1p(std::exp(inner));
  }
  return total;
}

TEST(NeuronOracleTest, MatchesTheReferenceForSeveralUnitsPerSample) {
  TestRandom r(26);
  for (auto objective : {NeuronObjective::kExact, NeuronObjective::kNoRelu}) {
    const int d = 5;
    const int per = 3;
    const size_t samples = 6;
    const auto x = testing::RandomMatrix(samples * per, d, 0.0, 1.0, r);
    std::vector<double> q(samples * per), offset(samples * per), c(samples);
    for (auto& v : q) v = r.Uniform(-2.0, 2.0);
    for (auto& v : offset) v = r.Uniform(-1.0, 1.0);
    for (auto& v : c) v = r.Uniform(-1.0, 1.0);
    const auto levels = QuantLevels::Make(-0.7, 0.4);
    NeuronProblem problem{std::make_shared<DenseColumns64>(x), per,
                          std::make_shared<std::vector<double>>(q),
                          std::make_shared<std::vector<double>>(c), offset, 1.3,
                          objective};
    NeuronOracle oracle(problem, BinaryWeightVector::FromMask(0b00110, d, levels));
    const bool exact = objective == NeuronObjective::kExact;
    uint64_t mask = 0b00110;
    for (int t = 0; t < 30; ++t) {
      const auto w0 = testing::MaskWeights(mask, d, levels.alpha, levels.beta);
      const double v0 = NeuronReference(x, q, c, offset, 1.3, per, w0, exact);
      ASSERT_NEAR(oracle.Value(), v0, 1e-9);
      const int i = r.Int(0, d - 1);
      const auto w1 =
          testing::MaskWeights(mask ^ (1ULL << i), d, levels.alpha, levels.beta);
      EXPECT_NEAR(oracle.Marginal(i),
                  NeuronReference(x, q, c, offset, 1.3, per, w1, exact) - v0, 1e-9);
      oracle.ApplyFlip(i);
      mask ^= 1ULL << i;
    }
  }
}

TEST(NeuronOracleTest, TangentFallsBackToNoReluForSeveralUnits) {
  const Matrix<double> x(4, 2);
  NeuronProblem problem{std::make_shared<DenseColumns64>(x), 2,
                        std::make_shared<std::vector<double>>(4, -1.0),
                        std::make_shared<std::vector<double>>(2, 0.0), {}, 1.0,
                        NeuronObjective::kTangent};
  NeuronOracle multi(problem, BinaryWeightVector::Create(
                                  2, QuantLevels::ZeroOne(), WeightInit::AllAlpha()));
  EXPECT_EQ(multi.objective(), NeuronObjective::kNoRelu);
  problem.units_per_sample = 1;
  problem.c = std::make_shared<std::vector<double>>(4, 0.0);
  NeuronOracle single(problem, BinaryWeightVector::Create(
                                   2, QuantLevels::ZeroOne(), WeightInit::AllAlpha()));
  EXPECT_EQ(single.objective(), NeuronObjective::kTangent);
}

TEST(NeuronOracleTest, RejectsInconsistentShapes) {
  const Matrix<double> x(6, 2);
  const auto start =
      BinaryWeightVector::Create(2, QuantLevels::ZeroOne(), WeightInit::AllAlpha());
  NeuronProblem bad{std::make_shared<DenseColumns64>(x), 4,
                    std::make_shared<std::vector<double>>(6, 1.0),
                    std::make_shared<std::vector<double>>(1, 0.0), {}};
  EXPECT_THROW(NeuronOracle(bad, start), ShapeError);
  bad.units_per_sample = 3;
  bad.q = std::make_shared<std::vector<double>>(5, 1.0);
  bad.c = std::make_shared<std::vector<double>>(2, 0.0);
  EXPECT_THROW(NeuronOracle(bad, start), ShapeError);
  bad.q.reset();
  EXPECT_THROW(NeuronOracle(bad, start), ConfigError);
}

TEST(FunctionOracleTest, MarginalIsTheValueDifference) {
  auto count_sq = [](const BinaryWeightVector& w) {
    const double k = w.CountHigh();
    return k * k;
  };
  FunctionOracle f(count_sq, BinaryWeightVector::FromMask(0b011, 3,
                                                          QuantLevels::ZeroOne()));
  EXPECT_DOUBLE_EQ(f.Value(), 4.0);
  EXPECT_DOUBLE_EQ(f.Marginal(2), 5.0);
  EXPECT_DOUBLE_EQ(f.Marginal(0), -3.0);
  f.ApplyFlip(2);
  EXPECT_DOUBLE_EQ(f.Value(), 9.0);
  EXPECT_DOUBLE_EQ(f.CloneAt(BinaryWeightVector::FromMask(
                                 0, 3, QuantLevels::ZeroOne()))->Value(),
                   0.0);
}

}  // namespace
}  // namespace lbw
