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

// A loss viewed as a set function of S = {i : w_i = beta}. The oracle is
// stateful: it sits at one weight pattern and answers marginal queries
// relative to it.

#ifndef LBW_ORACLE_SET_FUNCTION_H_
#define LBW_ORACLE_SET_FUNCTION_H_

#include <cstdint>
#include <functional>
#include <memory>

#include "lbw/quantcore/weights.h"

namespace lbw {

struct OracleOptions {
  // Full recompute of cached margins after this many committed flips.
  int refresh_interval = 4096;
  // Test hook: commit margin updates with the wrong sign.
  bool inject_sign_fault = false;
};

class SetFunctionOracle {
 public:
  virtual ~SetFunctionOracle() = default;

  int dimension() const { return weights().dimension(); }
  virtual const BinaryWeightVector& weights() const = 0;

  // Value at the current pattern.
  virtual double Value() const = 0;
  // Value(after flipping i) - Value(now); the state is unchanged.
  double Marginal(int i) {
    ++marginal_calls_;
    return ComputeMarginal(i);
  }
  // Moves the oracle to the pattern with coordinate i flipped.
  virtual void ApplyFlip(int i) = 0;
  // Value at an arbitrary pattern, computed from scratch.
  virtual double Evaluate(const BinaryWeightVector& pattern) const = 0;
  // Fresh oracle over the same data positioned at `start`.
  virtual std::unique_ptr<SetFunctionOracle> CloneAt(
      const BinaryWeightVector& start) const = 0;

  int64_t marginal_calls() const { return marginal_calls_; }

 protected:
  virtual double ComputeMarginal(int i) = 0;

 private:
  int64_t marginal_calls_ = 0;
};

using OracleFactory =
    std::function<std::unique_ptr<SetFunctionOracle>(const BinaryWeightVector&)>;

// Clones `prototype`, which is held by reference and must outlive the factory.
OracleFactory FactoryFrom(const SetFunctionOracle& prototype);

// Oracle over an arbitrary callable; every query is a full evaluation.
class FunctionOracle : public SetFunctionOracle {
 public:
  using Fn = std::function<double(const BinaryWeightVector&)>;
  FunctionOracle(Fn fn, BinaryWeightVector start);

  const BinaryWeightVector& weights() const override { return w_; }
  double Value() const override { return value_; }
  void ApplyFlip(int i) override;
  double Evaluate(const BinaryWeightVector& pattern) const override {
    return fn_(pattern);
  }
  std::unique_ptr<SetFunctionOracle> CloneAt(
      const BinaryWeightVector& start) const override;

 protected:
  double ComputeMarginal(int i) override;

 private:
  Fn fn_;
  BinaryWeightVector w_;
  double value_;
};

}  // namespace lbw

#endif  // LBW_ORACLE_SET_FUNCTION_H_
