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

// Single-layer (linear) classifiers with binary or multi-component weights.
//
// Multi-component coordinate descent visits components in order, n_iter
// times. GCD runs one greedy pass on the true loss with the other
// components frozen (their contribution enters as a margin offset). RSM
// runs on component j's term of the decoupled Jensen bound (see
// MultibitSurrogateSplit); since that term does not depend on the other
// components, a new RSM draw replaces component j only when it does not
// increase the term, so repeated sweeps keep the best draw.

#ifndef LBW_OPTIM_SINGLE_LAYER_H_
#define LBW_OPTIM_SINGLE_LAYER_H_

#include <cstdint>
#include <vector>

#include "lbw/common/rng.h"
#include "lbw/dataio/dataset.h"
#include "lbw/optim/config.h"
#include "lbw/quantcore/weights.h"

namespace lbw {

struct MultibitStep {
  int sweep = 0;
  int component = 0;
  double before = 0.0;  // objective of the step before it ran
  double after = 0.0;   // objective after (after <= before for GCD)
  bool replaced = false;
};

struct MultibitResult {
  MultiComponentWeight weights;
  std::vector<MultibitStep> steps;
  int64_t marginal_calls = 0;
};

MultibitResult MultibitCd(const BinaryTask& task, MultiComponentWeight init,
                          Method method, int n_iter, CoordinateOrder order,
                          Rng& rng);

// Component scale used by the multi-bit single-layer runs unless
// overridden: 0.1 for B = 2 and 0.075 for B >= 3.
double DefaultComponentScale(int bits);

struct SingleLayerConfig {
  int bits = 1;
  Method method = Method::kRsm;
  // bits == 1: levels {-level, +level}.
  double level = 0.5;
  // bits >= 2: scale of each {0,1} component (<= 0 picks the default).
  double component_scale = 0.0;
  int n_iter = 1;
  CoordinateOrder order = CoordinateOrder::kAscending;
  uint64_t seed = 0;
};

struct LinearEval {
  double mean_loss = 0.0;
  double accuracy = 0.0;  // fraction in [0, 1]
};

LinearEval EvaluateLinear(const std::vector<double>& w,
                          const BinaryTask& task);

struct SingleLayerResult {
  MultiComponentWeight weights;
  LinearEval train;
  LinearEval test;
  double seconds = 0.0;
  int64_t marginal_calls = 0;
};

SingleLayerResult TrainSingleLayer(const BinaryTask& train,
                                   const BinaryTask& test,
                                   const SingleLayerConfig& cfg);

}  // namespace lbw

#endif  // LBW_OPTIM_SINGLE_LAYER_H_
