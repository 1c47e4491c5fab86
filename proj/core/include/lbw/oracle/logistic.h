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

#ifndef LBW_ORACLE_LOGISTIC_H_
#define LBW_ORACLE_LOGISTIC_H_

#include <cmath>
#include <span>

namespace lbw {

// log(1 + e^u). Linear asymptote above 30, e^u below -30.
inline double Softplus(double u) {
  if (u > 30.0) return u;
  if (u < -30.0) return std::exp(u);
  return std::log1p(std::exp(u));
}

inline double Sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

// log(1 + exp(-y z)).
inline double LogisticTerm(double y, double z) { return Softplus(-y * z); }

// sum_i log(1 + exp(-y_i z_i)). Throws ShapeError on length mismatch and
// NumericError on a NaN margin.
double LogisticLoss(std::span<const double> margins, std::span<const double> y);

// Number of samples with y_i z_i <= 0.
double ZeroOneLoss(std::span<const double> margins, std::span<const double> y);

// Prediction rule used for accuracy: +1 iff z > 0.
inline double PredictLabel(double z) { return z > 0.0 ? 1.0 : -1.0; }

// Fraction of samples with PredictLabel(z_i) == y_i.
double Accuracy(std::span<const double> margins, std::span<const double> y);

}  // namespace lbw

#endif  // LBW_ORACLE_LOGISTIC_H_
