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

// Micro benchmarks on synthetic data, so they run without the datasets.
// BM_TrainLayerSweep reports an O(n) fit of per-sweep time against the
// number of training samples.

#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "lbw/common/rng.h"
#include "lbw/dataio/dataset.h"
#include "lbw/netmodel/architecture.h"
#include "lbw/netmodel/network.h"
#include "lbw/oracle/column_source.h"
#include "lbw/oracle/linear_oracle.h"
#include "lbw/optim/config.h"
#include "lbw/optim/gcd.h"
#include "lbw/optim/rsm.h"
#include "lbw/optim/train.h"

namespace lbw {
namespace {

// MNIST-like task: pixels in [0, 1] with about 80% zeros.
BinaryTask SyntheticTask(size_t n, int channels, int side, uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<float> pixel(0.0f, 1.0f);
  BinaryTask t;
  t.shape = {channels, side, side};
  t.features = FeatureMatrix(n, static_cast<size_t>(t.shape.size()));
  for (auto& v : t.features.data()) v = pixel(gen) < 0.8f ? 0.0f : pixel(gen);
  t.y.resize(n);
  for (auto& y : t.y) y = gen() % 2 ? 1.0 : -1.0;
  return t;
}

std::unique_ptr<LinearOracle> OracleFor(const BinaryTask& task) {
  const int d = static_cast<int>(task.d());
  return MakeLinearOracle(
      task, BinaryWeightVector::Create(d, QuantLevels::Symmetric(0.05),
                                       WeightInit::SeededRandom(1)));
}

void BM_LinearMarginal(benchmark::State& state) {
  const auto task = SyntheticTask(static_cast<size_t>(state.range(0)), 1, 28, 1);
  auto oracle = OracleFor(task);
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle->Marginal(i));
    i = (i + 1) % oracle->dimension();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LinearMarginal)->Arg(1000)->Arg(4000);

void BM_GcdPass(benchmark::State& state) {
  const auto task = SyntheticTask(static_cast<size_t>(state.range(0)), 1, 28, 2);
  std::vector<int> order(task.d());
  std::iota(order.begin(), order.end(), 0);
  for (auto _ : state) {
    state.PauseTiming();
    auto oracle = OracleFor(task);
    state.ResumeTiming();
    benchmark::DoNotOptimize(Gcd(*oracle, order).final_value);
  }
}
BENCHMARK(BM_GcdPass)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RsmPass(benchmark::State& state) {
  const auto task = SyntheticTask(static_cast<size_t>(state.range(0)), 1, 28, 3);
  const auto prototype = OracleFor(task);
  const auto factory = FactoryFrom(*prototype);
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Rsm(factory, prototype->weights().levels(), prototype->dimension(), rng)
            .value);
  }
}
BENCHMARK(BM_RsmPass)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ForwardBatch(benchmark::State& state, const char* arch, int channels,
                     int side) {
  const auto task = SyntheticTask(256, channels, side, 4);
  const auto model =
      NetworkModel::Create(BuiltinArchitecture(arch), task.shape, 1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.ForwardBatch(task.features).outputs.data());
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK_CAPTURE(BM_ForwardBatch, fc2, "fc2", 1, 28)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ForwardBatch, lenet5, "lenet5", 3, 32)
    ->Unit(benchmark::kMillisecond);

// One GCD sweep over the hidden layer of FC2.
void BM_TrainLayerSweep(benchmark::State& state) {
  const auto task = SyntheticTask(static_cast<size_t>(state.range(0)), 1, 28, 5);
  OptimizerConfig cfg;
  for (auto _ : state) {
    state.PauseTiming();
    auto model = NetworkModel::Create(BuiltinArchitecture("fc2"), task.shape, 1, 0);
    std::vector<double> a(static_cast<size_t>(model.feature_size()), 0.1);
    model.set_output(a, 0.0);
    const auto trace = model.ForwardBatch(task.features);
    Rng rng(11);
    state.ResumeTiming();
    benchmark::DoNotOptimize(
        TrainLayer(model, task, trace, 0, Method::kGcd, cfg, rng).objective_change);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TrainLayerSweep)
    ->Arg(100)
    ->Arg(200)
    ->Arg(400)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

}  // namespace
}  // namespace lbw

BENCHMARK_MAIN();
