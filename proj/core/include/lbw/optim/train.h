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

// Layerwise training of quantized networks.
//
// One sweep visits the quantized layers bottom-up. For layer q the network
// above q is replaced, per sample, by its linearization around the current
// activations, so row k of layer q sees the neuron subproblem
//   softplus(c_s + sum_p q_{s,p} relu(t_{s,p})),
//   q_{s,p} = -y_s a_hat_{s,(k,p)},
//   c_s     = -y_s (f_hat_s - sum_p a_hat_{s,(k,p)} relu(t_{s,p})).
// GCD minimizes the exact subproblem, RSM one of the convex surrogates.
// Each component update of a row is followed by the accept-reject step and
// the output weights are refitted by SAG after every layer. With a single
// quantized layer the linearization is exact and this is the two-layer loop.

#ifndef LBW_OPTIM_TRAIN_H_
#define LBW_OPTIM_TRAIN_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lbw/common/rng.h"
#include "lbw/dataio/dataset.h"
#include "lbw/netmodel/network.h"
#include "lbw/optim/config.h"

namespace lbw {

struct NetworkEval {
  double mean_loss = 0.0;
  double accuracy = 0.0;  // fraction in [0, 1]
};

NetworkEval EvaluateNetwork(const NetworkModel& model, const BinaryTask& task);

struct LayerStats {
  int64_t updates = 0;   // component updates proposed
  int64_t reverted = 0;  // of which rolled back by accept-reject
  // Sum of accepted objective changes, each divided by n.
  double objective_change = 0.0;
};

// Runs the inner loop on quantized layer q. `trace` must come from
// model.ForwardBatch(train.features) with the current weights; it is left
// stale for layer q and above.
LayerStats TrainLayer(NetworkModel& model, const BinaryTask& train,
                      const BatchTrace& trace, int q, Method method,
                      const OptimizerConfig& cfg, Rng& rng);

// SAG on the final features, warm-started from the current output weights.
void FitOutputLayer(NetworkModel& model, const Matrix<double>& features,
                    std::span<const double> y, const SagConfig& sag);

struct SweepRecord {
  int sweep = 0;  // 0 is the state after the initial output fit
  double train_loss = 0.0;
  double test_loss = 0.0;
  double test_acc = 0.0;  // fraction in [0, 1]
  double seconds = 0.0;
  int64_t updates = 0;
  int64_t reverted = 0;
};

struct TrainReport {
  uint64_t seed = 0;
  std::string weights_ref;  // filled in by whoever saves the model
  std::vector<std::string> layer_methods;
  std::vector<SweepRecord> sweeps;

  const SweepRecord& final_record() const { return sweeps.back(); }
};

nlohmann::json ToJson(const TrainReport& report, bool include_timing = true);
inline constexpr const char* kTrainCsvHeader =
    "sweep,train_loss,test_loss,test_acc,seconds";
// One line per sweep, no header.
void AppendCsvRows(const TrainReport& report, std::ostream& out);

// Full loop; throws ConfigError for an invalid config or a model without
// quantized layers.
TrainReport TrainNetwork(NetworkModel& model, const BinaryTask& train,
                         const BinaryTask& test, const OptimizerConfig& cfg);

// TrainNetwork restricted to models with exactly one quantized layer.
TrainReport TrainTwoLayer(NetworkModel& model, const BinaryTask& train,
                          const BinaryTask& test, const OptimizerConfig& cfg);

}  // namespace lbw

#endif  // LBW_OPTIM_TRAIN_H_
