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

// Convex upper bounds of logistic-type losses that are supermodular in the
// weight bits.

#ifndef LBW_ORACLE_SURROGATES_H_
#define LBW_ORACLE_SURROGATES_H_

#include <span>
#include <string>
#include <vector>

#include "lbw/common/matrix.h"
#include "lbw/quantcore/weights.h"

namespace lbw {

struct PosNeg {
  std::vector<double> pos;
  std::vector<double> neg;
};

// pos = max(0, x), neg = -max(0, -x); pos + neg == x exactly.
PosNeg PosNegSplit(std::span<const double> x);

// log2(1 + e^{-u}). Unlike the natural-log version this dominates the 0-1
// loss [u <= 0], which is what the pos/neg bound needs.
double LogisticBits(double u);

// sum_s 1/2 (l(y_s <w, pos(x_s)>) + l(y_s <w, neg(x_s)>)) with l = LogisticBits.
double PosnegSurrogateLoss(const BinaryWeightVector& w, const FeatureMatrix& x,
                           std::span<const double> y);

// sum_s log(1 + exp(-y_s <w1 - w2, x_s>)) for {0,1} patterns w1, w2.
double TernaryTrueLoss(const BinaryWeightVector& w1,
                       const BinaryWeightVector& w2, const FeatureMatrix& x,
                       std::span<const double> y);

// sum_s 1/2 (g_s(<w1, 2x_s>) + g_s(<w2, -2x_s>)), g_s(t) = log(1+exp(-y_s t)).
double TernarySurrogateLoss(const BinaryWeightVector& w1,
                            const BinaryWeightVector& w2,
                            const FeatureMatrix& x, std::span<const double> y);

// Decoupled bound for the multi-component weight w = s (sum_P b_j - sum_N b_j)
// with |P| = p positive and |N| = q negative components. Jensen applied
// twice (once across the two groups, once inside each group) gives
//   g(<w,x>) <= 1/(2p) sum_P g(2ps <b_j,x>) + 1/(2q) sum_N g(-2qs <b_j,x>)
// and, when q = 0, g(<w,x>) <= 1/p sum_P g(ps <b_j,x>). Each summand depends
// on one component only.
struct MultibitSplit {
  // Coefficient on <b_j, x> inside component j's term.
  double coef = 0.0;
  // Positive weight of component j's term in the bound.
  double weight = 0.0;
};
MultibitSplit MultibitSurrogateSplit(const MultiComponentWeight& m, int j);

double MultibitTrueLoss(const MultiComponentWeight& m, const FeatureMatrix& x,
                        std::span<const double> y);
double MultibitSurrogateLoss(const MultiComponentWeight& m,
                             const FeatureMatrix& x, std::span<const double> y);

// Per-sample single-neuron loss g(t) = log(1 + exp(p max(0, t) + c)).
struct NeuronSubproblem {
  double p = 0.0;
  double c = 0.0;
};

enum class SurrogateVariant { kTangent, kNoRelu };

// What a neuron oracle minimizes: the exact g or one of the two convex
// upper bounds.
enum class NeuronObjective { kExact, kTangent, kNoRelu };

NeuronObjective ObjectiveFor(SurrogateVariant variant);
std::string ToString(SurrogateVariant variant);
SurrogateVariant ParseSurrogateVariant(const std::string& name);

double NeuronLoss(const NeuronSubproblem& sub, double t);
// Right derivative of g at 0: p e^c / (1 + e^c).
double NeuronSlopeAtZero(const NeuronSubproblem& sub);
// For p >= 0 both variants equal g. For p < 0:
//   kTangent: g(t) for t >= 0, g(0) + g'(0+) t for t < 0;
//   kNoRelu:  log(1 + exp(p t + c)).
double NeuronSurrogate(const NeuronSubproblem& sub, double t,
                       SurrogateVariant variant);
double NeuronObjectiveValue(const NeuronSubproblem& sub, double t,
                            NeuronObjective objective);

// Contribution of one unit with output coefficient q and pre-activation t
// to the softplus argument: q relu(t) for the exact loss or q >= 0, and q t
// otherwise (both bounds use the no-ReLU line here).
inline double UnitContribution(double q, double t, NeuronObjective objective) {
  if (objective == NeuronObjective::kExact || q >= 0.0) {
    return t > 0.0 ? q * t : 0.0;
  }
  return q * t;
}

}  // namespace lbw

#endif  // LBW_ORACLE_SURROGATES_H_
