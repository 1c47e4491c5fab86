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

#include "lbw/common/errors.h"

namespace lbw {
namespace {

void CheckLengths(std::span<const double> margins, std::span<const double> y) {
  if (margins.size() != y.size()) {
    throw ShapeError("margin and label vectors differ in length");
  }
}

}  // namespace

double LogisticLoss(std::span<const double> margins,
                    std::span<const double> y) {
  CheckLengths(margins, y);
  double total = 0.0;
  for (size_t i = 0; i < margins.size(); ++i) {
    if (std::isnan(margins[i])) throw NumericError("NaN margin in logistic loss");
    total += LogisticTerm(y[i], margins[i]);
  }
  return total;
}

double ZeroOneLoss(std::span<const double> margins,
                   std::span<const double> y) {
  CheckLengths(margins, y);
  double errors = 0.0;
  for (size_t i = 0; i < margins.size(); ++i) {
    if (y[i] * margins[i] <= 0.0) errors += 1.0;
  }
  return errors;
}

double Accuracy(std::span<const double> margins, std::span<const double> y) {
  CheckLengths(margins, y);
  if (margins.empty()) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < margins.size(); ++i) {
    if (PredictLabel(margins[i]) == y[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(margins.size());
}

}  // namespace lbw
