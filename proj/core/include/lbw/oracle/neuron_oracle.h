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

#ifndef LBW_ORACLE_NEURON_ORACLE_H_
#define LBW_ORACLE_NEURON_ORACLE_H_

#include <memory>
#include <vector>

#include "lbw/oracle/column_source.h"
#include "lbw/oracle/margin_cache.h"
#include "lbw/oracle/set_function.h"
#include "lbw/oracle/surrogates.h"

namespace lbw {

// Loss of one neuron's weight row with everything else frozen. Each sample s
// owns `units_per_sample` consecutive rows of `columns` (one per spatial
// position for a convolution filter, exactly one for a dense unit). With
// t_u = offset_u + coef * <w, u> the per-sample loss is
//   P = 1:  NeuronObjectiveValue({q_s, c_s}, t_s, objective)
//   P > 1:  softplus(c_s + sum_u UnitContribution(q_u, t_u, objective))
// and the oracle value is the sum over samples. The tangent bound has no
// multi-position form, so P > 1 with kTangent runs as kNoRelu.
struct NeuronProblem {
  std::shared_ptr<const ColumnSource> columns;
  int units_per_sample = 1;
  std::shared_ptr<const std::vector<double>> q;  // one per row
  std::shared_ptr<const std::vector<double>> c;  // one per sample
  std::vector<double> offset;                    // one per row, or empty
  double coef = 1.0;
  NeuronObjective objective = NeuronObjective::kNoRelu;
};

class NeuronOracle : public SetFunctionOracle {
 public:
  NeuronOracle(NeuronProblem problem, BinaryWeightVector start,
               OracleOptions options = {});

  const BinaryWeightVector& weights() const override {
    return cache_.weights();
  }
  double Value() const override { return value_; }
  void ApplyFlip(int i) override;
  double Evaluate(const BinaryWeightVector& pattern) const override;
  std::unique_ptr<SetFunctionOracle> CloneAt(
      const BinaryWeightVector& start) const override;

  NeuronObjective objective() const { return problem_.objective; }
  size_t num_samples() const { return terms_.size(); }
  const MarginCache& cache() const { return cache_; }
  // Current pre-activations, one per row.
  std::span<const double> pre_activations() const { return cache_.margins(); }

 private:
  double ComputeMarginal(int i) override;
  void RebuildTerms();
  double SampleTerm(size_t s, double inner_or_t) const;
  double ValueFromMargins(std::span<const double> t) const;

  NeuronProblem problem_;
  OracleOptions options_;
  MarginCache cache_;
  std::vector<double> inner_;  // P > 1: sum of unit contributions
  std::vector<double> terms_;
  double value_ = 0.0;

  MarginCache::Proposal proposal_;
  std::vector<uint32_t> touched_;
  std::vector<double> touched_inner_;
  std::vector<double> touched_terms_;
  double proposal_delta_ = 0.0;
  bool proposal_valid_ = false;
};

}  // namespace lbw

#endif  // LBW_ORACLE_NEURON_ORACLE_H_
