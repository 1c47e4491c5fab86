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

#include "lbw/oracle/set_function.h"

namespace lbw {

OracleFactory FactoryFrom(const SetFunctionOracle& prototype) {
  return [&prototype](const BinaryWeightVector& start) {
    return prototype.CloneAt(start);
  };
}

FunctionOracle::FunctionOracle(Fn fn, BinaryWeightVector start)
    : fn_(std::move(fn)), w_(std::move(start)), value_(fn_(w_)) {}

double FunctionOracle::ComputeMarginal(int i) {
  return fn_(Flipped(w_, i).weights) - value_;
}

void FunctionOracle::ApplyFlip(int i) {
  w_.Flip(i);
  value_ = fn_(w_);
}

std::unique_ptr<SetFunctionOracle> FunctionOracle::CloneAt(
    const BinaryWeightVector& start) const {
  return std::make_unique<FunctionOracle>(fn_, start);
}

}  // namespace lbw
