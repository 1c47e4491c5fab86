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

// Stochastic average gradient for L2-regularized logistic regression
//   min_w 1/n sum_s log(1 + exp(-y_s (<w, x_s> + b))) + lambda/2 |w|^2.
// A table keeps the last scalar gradient of every sample; each step
// refreshes one entry (sample drawn uniformly with replacement) and moves
// along the average of the table over the samples seen so far. Step size
// 1 / (0.25 max_s |x_s|^2 + lambda), with |x_s|^2 counting the constant
// feature when the intercept is fitted.

#ifndef LBW_OPTIM_SAG_H_
#define LBW_OPTIM_SAG_H_

#include <span>
#include <vector>

#include "lbw/common/matrix.h"
#include "lbw/optim/config.h"

namespace lbw {

struct SagResult {
  std::vector<double> w;
  double intercept = 0.0;
};

// Starts from (w0, b0); empty w0 means zeros.
template <typename T>
SagResult Sag(const Matrix<T>& x, std::span<const double> y,
              const SagConfig& cfg, std::span<const double> w0 = {},
              double b0 = 0.0);

}  // namespace lbw

#endif  // LBW_OPTIM_SAG_H_
