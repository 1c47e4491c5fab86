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

#include <chrono>
#include <memory>

#include "lbw/common/errors.h"
#include "lbw/oracle/linear_oracle.h"
#include "lbw/oracle/logistic.h"
#include "lbw/oracle/surrogates.h"
#include "lbw/optim/gcd.h"
#include "lbw/optim/rsm.h"

namespace lbw {

MultibitResult MultibitCd(const BinaryTask& task, MultiComponentWeight init,
                          Method method, int n_iter, CoordinateOrder order,
                          Rng& rng) {
  if (n_iter < 1) throw ConfigError("n_iter must be >= 1");
  if (static_cast<size_t>(init.dimension()) != task.d()) {
    throw ShapeError("weight dimension does not match the task");
  }
  const int d = init.dimension();
  const int parts = init.num_components();
  auto columns = std::make_shared<DenseColumns>(task.features);
  auto y = std::make_shared<std::vector<double>>(task.y);

  MultibitResult result{std::move(init), {}, 0};
  MultiComponentWeight& m = result.weights;
  for (int sweep = 0; sweep < n_iter; ++sweep) {
    for (int j = 0; j < parts; ++j) {
      const auto seq = CoordinateSequence(d, order, rng.NextU64());
      MultibitStep step{sweep, j, 0.0, 0.0, false};
      const BinaryWeightVector& current = m.component(j);
      if (method == Method::kRsm) {
        const auto split = MultibitSurrogateSplit(m, j);
        LinearOracle prototype(columns, y, current, {}, split.coef);
        auto draw = Rsm(FactoryFrom(prototype), current.levels(), d, seq, rng);
        result.marginal_calls += draw.marginal_calls;
        step.before = prototype.Value();
        step.after = draw.value;
        // The initial pattern is not a draw: the first sweep always takes
        // its draw, later sweeps keep the best draw so far.
        if (sweep == 0 || draw.value <= step.before) {
          m.mutable_component(j) = std::move(draw.weights);
          step.replaced = true;
        } else {
          step.after = step.before;
        }
      } else {
        std::vector<double> offset(task.n(), 0.0);
        for (int other = 0; other < parts; ++other) {
          if (other == j) continue;
          const auto z = MarginsOf(*columns, m.component(other), offset,
                                   m.ComponentCoefficient(other));
          offset = z;
        }
        LinearOracle oracle(columns, y, current, offset,
                            m.ComponentCoefficient(j));
        const auto pass = Gcd(oracle, seq);
        result.marginal_calls += oracle.marginal_calls();
        step.before = pass.initial_value;
        step.after = pass.final_value;
        step.replaced = pass.flips > 0;
        m.mutable_component(j) = oracle.weights();
      }
      result.steps.push_back(step);
    }
  }
  return result;
}

double DefaultComponentScale(int bits) { return bits <= 2 ? 0.1 : 0.075; }

LinearEval EvaluateLinear(const std::vector<double>& w,
                          const BinaryTask& task) {
  if (w.size() != task.d()) throw ShapeError("weight/task dimension mismatch");
  std::vector<double> z(task.n(), 0.0);
  for (size_t s = 0; s < task.n(); ++s) {
    const auto row = task.features.row(s);
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) acc += w[i] * row[i];
    z[s] = acc;
  }
  LinearEval e;
  if (task.n() == 0) return e;
  e.mean_loss = LogisticLoss(z, task.y) / static_cast<double>(task.n());
  e.accuracy = Accuracy(z, task.y);
  return e;
}

SingleLayerResult TrainSingleLayer(const BinaryTask& train,
                                   const BinaryTask& test,
                                   const SingleLayerConfig& cfg) {
  if (cfg.bits < 1) throw ConfigError("bit width must be >= 1");
  if (cfg.n_iter < 1) throw ConfigError("n_iter must be >= 1");
  const int d = static_cast<int>(train.d());
  if (test.d() != train.d()) {
    throw ShapeError("train and test tasks disagree on dimension");
  }
  const auto start = std::chrono::steady_clock::now();
  Rng rng = Rng::Derive(cfg.seed, 0x51);

  MultiComponentWeight init = [&] {
    if (cfg.bits == 1) {
      const auto init_kind = cfg.method == Method::kGcd
                                 ? WeightInit::SeededRandom(rng.NextU64())
                                 : WeightInit::AllAlpha();
      return MultiComponentWeight::Single(BinaryWeightVector::Create(
          d, QuantLevels::Symmetric(cfg.level), init_kind));
    }
    const double s = cfg.component_scale > 0.0
                         ? cfg.component_scale
                         : DefaultComponentScale(cfg.bits);
    return MultiComponentWeight::Scheme(d, cfg.bits,
                                        s * PositiveComponentCount(cfg.bits),
                                        WeightInit::AllAlpha());
  }();

  auto fit = MultibitCd(train, std::move(init), cfg.method, cfg.n_iter,
                        cfg.order, rng);
  SingleLayerResult result{std::move(fit.weights), {}, {}, 0.0,
                           fit.marginal_calls};
  const auto w = result.weights.Compose();
  result.train = EvaluateLinear(w, train);
  result.test = EvaluateLinear(w, test);
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

}  // namespace lbw
