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

#include "lbw/oracle/surrogates.h"

#include <cmath>
#include <numbers>

#include "lbw/common/errors.h"
#include "lbw/oracle/logistic.h"

namespace lbw {
namespace {

void CheckShapes(int d, const FeatureMatrix& x, std::span<const double> y) {
  if (x.cols() != static_cast<size_t>(d)) {
    throw ShapeError("weight dimension does not match feature dimension");
  }
  if (x.rows() != y.size()) {
    throw ShapeError("label count does not match sample count");
  }
}

double Dot(std::span<const double> w, std::span<const float> x) {
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
  return acc;
}

}  // namespace

PosNeg PosNegSplit(std::span<const double> x) {
  PosNeg out{std::vector<double>(x.size(), 0.0),
             std::vector<double>(x.size(), 0.0)};
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      out.pos[i] = x[i];
    } else {
      out.neg[i] = x[i];
    }
  }
  return out;
}

double LogisticBits(double u) { return Softplus(-u) / std::numbers::ln2; }

double PosnegSurrogateLoss(const BinaryWeightVector& w, const FeatureMatrix& x,
                           std::span<const double> y) {
  CheckShapes(w.dimension(), x, y);
  const auto dense = w.Dense();
  double total = 0.0;
  for (size_t s = 0; s < x.rows(); ++s) {
    const auto row = x.row(s);
    double zp = 0.0;
    double zn = 0.0;
    for (size_t i = 0; i < dense.size(); ++i) {
      if (row[i] > 0.0f) {
        zp += dense[i] * row[i];
      } else {
        zn += dense[i] * row[i];
      }
    }
    total += 0.5 * (LogisticBits(y[s] * zp) + LogisticBits(y[s] * zn));
  }
  return total;
}

double TernaryTrueLoss(const BinaryWeightVector& w1,
                       const BinaryWeightVector& w2, const FeatureMatrix& x,
                       std::span<const double> y) {
  if (w1.dimension() != w2.dimension()) {
    throw ShapeError("ternary components disagree on dimension");
  }
  CheckShapes(w1.dimension(), x, y);
  const auto a = w1.Dense();
  const auto b = w2.Dense();
  std::vector<double> w(a.size());
  for (size_t i = 0; i < a.size(); ++i) w[i] = a[i] - b[i];
  double total = 0.0;
  for (size_t s = 0; s < x.rows(); ++s) {
    total += LogisticTerm(y[s], Dot(w, x.row(s)));
  }
  return total;
}

double TernarySurrogateLoss(const BinaryWeightVector& w1,
                            const BinaryWeightVector& w2,
                            const FeatureMatrix& x, std::span<const double> y) {
  if (w1.dimension() != w2.dimension()) {
    throw ShapeError("ternary components disagree on dimension");
  }
  CheckShapes(w1.dimension(), x, y);
  const auto a = w1.Dense();
  const auto b = w2.Dense();
  double total = 0.0;
  for (size_t s = 0; s < x.rows(); ++s) {
    const double t1 = 2.0 * Dot(a, x.row(s));
    const double t2 = -2.0 * Dot(b, x.row(s));
    total += 0.5 * (LogisticTerm(y[s], t1) + LogisticTerm(y[s], t2));
  }
  return total;
}

MultibitSplit MultibitSurrogateSplit(const MultiComponentWeight& m, int j) {
  int positive = 0;
  for (int sign : m.signs()) positive += sign > 0 ? 1 : 0;
  const int negative = m.num_components() - positive;
  const int own = m.sign(j) > 0 ? positive : negative;
  const double spread = negative > 0 ? 2.0 * own : static_cast<double>(own);
  return {spread * m.ComponentCoefficient(j), 1.0 / spread};
}

double MultibitTrueLoss(const MultiComponentWeight& m, const FeatureMatrix& x,
                        std::span<const double> y) {
  CheckShapes(m.dimension(), x, y);
  const auto w = m.Compose();
  double total = 0.0;
  for (size_t s = 0; s < x.rows(); ++s) {
    total += LogisticTerm(y[s], Dot(w, x.row(s)));
  }
  return total;
}

double MultibitSurrogateLoss(const MultiComponentWeight& m,
                             const FeatureMatrix& x,
                             std::span<const double> y) {
  CheckShapes(m.dimension(), x, y);
  double total = 0.0;
  for (int j = 0; j < m.num_components(); ++j) {
    const auto split = MultibitSurrogateSplit(m, j);
    const auto b = m.component(j).Dense();
    for (size_t s = 0; s < x.rows(); ++s) {
      total += split.weight * LogisticTerm(y[s], split.coef * Dot(b, x.row(s)));
    }
  }
  return total;
}

NeuronObjective ObjectiveFor(SurrogateVariant variant) {
  return variant == SurrogateVariant::kTangent ? NeuronObjective::kTangent
                                               : NeuronObjective::kNoRelu;
}

std::string ToString(SurrogateVariant variant) {
  return variant == SurrogateVariant::kTangent ? "tangent" : "no_relu";
}

SurrogateVariant ParseSurrogateVariant(const std::string& name) {
  if (name == "tangent") return SurrogateVariant::kTangent;
  if (name == "no_relu") return SurrogateVariant::kNoRelu;
  throw ConfigError("unknown surrogate '" + name +
                    "' (expected tangent or no_relu)");
}

double NeuronLoss(const NeuronSubproblem& sub, double t) {
  return Softplus(sub.p * (t > 0.0 ? t : 0.0) + sub.c);
}

double NeuronSlopeAtZero(const NeuronSubproblem& sub) {
  return sub.p * Sigmoid(sub.c);
}

double NeuronSurrogate(const NeuronSubproblem& sub, double t,
                       SurrogateVariant variant) {
  if (sub.p >= 0.0) return NeuronLoss(sub, t);
  if (variant == SurrogateVariant::kNoRelu) return Softplus(sub.p * t + sub.c);
  if (t >= 0.0) return NeuronLoss(sub, t);
  return Softplus(sub.c) + NeuronSlopeAtZero(sub) * t;
}

double NeuronObjectiveValue(const NeuronSubproblem& sub, double t,
                            NeuronObjective objective) {
  switch (objective) {
    case NeuronObjective::kExact:
      return NeuronLoss(sub, t);
    case NeuronObjective::kTangent:
      return NeuronSurrogate(sub, t, SurrogateVariant::kTangent);
    case NeuronObjective::kNoRelu:
      return NeuronSurrogate(sub, t, SurrogateVariant::kNoRelu);
  }
  return NeuronLoss(sub, t);
}

}  // namespace lbw
