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

#ifndef LBW_ORACLE_LINEAR_ORACLE_H_
#define LBW_ORACLE_LINEAR_ORACLE_H_

#include <memory>
#include <vector>

#include "lbw/dataio/dataset.h"
#include "lbw/oracle/column_source.h"
#include "lbw/oracle/margin_cache.h"
#include "lbw/oracle/set_function.h"

namespace lbw {

// Logistic loss of a linear model in one binary weight vector:
//   L(w) = sum_s log(1 + exp(-y_s z_s)),  z_s = offset_s + coef * <w, x_s>.
// The offset carries contributions that stay fixed while w is optimized
// (other components of a multi-bit weight, for instance).
class LinearOracle : public SetFunctionOracle {
 public:
  LinearOracle(std::shared_ptr<const ColumnSource> columns,
               std::shared_ptr<const std::vector<double>> y,
               BinaryWeightVector start, std::vector<double> offset = {},
               double coef = 1.0, OracleOptions options = {});

  const BinaryWeightVector& weights() const override {
    return cache_.weights();
  }
  double Value() const override { return value_; }
  void ApplyFlip(int i) override;
  double Evaluate(const BinaryWeightVector& pattern) const override;
  std::unique_ptr<SetFunctionOracle> CloneAt(
      const BinaryWeightVector& start) const override;

  const MarginCache& cache() const { return cache_; }

 protected:
  double ComputeMarginal(int i) override;

 private:
  void RebuildTerms();

  std::shared_ptr<const ColumnSource> columns_;
  std::shared_ptr<const std::vector<double>> y_;
  std::vector<double> offset_;
  double coef_;
  OracleOptions options_;
  MarginCache cache_;
  std::vector<double> terms_;
  double value_ = 0.0;

  // Last proposal and the per-row terms it would produce.
  MarginCache::Proposal proposal_;
  std::vector<double> proposal_terms_;
  double proposal_delta_ = 0.0;
  bool proposal_valid_ = false;
};

// Oracle for the single-layer loss of `task` starting at `start`.
std::unique_ptr<LinearOracle> MakeLinearOracle(const BinaryTask& task,
                                               const BinaryWeightVector& start,
                                               OracleOptions options = {});

}  // namespace lbw

#endif  // LBW_ORACLE_LINEAR_ORACLE_H_
