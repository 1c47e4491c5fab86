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

#include "lbw/oracle/neuron_oracle.h"

#include "lbw/common/errors.h"
#include "lbw/oracle/logistic.h"

namespace lbw {
namespace {

NeuronProblem Normalize(NeuronProblem problem) {
  if (!problem.columns || !problem.q || !problem.c) {
    throw ConfigError("neuron problem is missing columns, q or c");
  }
  if (problem.units_per_sample < 1) {
    throw ShapeError("units per sample must be >= 1");
  }
  const size_t rows = problem.columns->num_rows();
  const size_t per = static_cast<size_t>(problem.units_per_sample);
  if (rows % per != 0 || problem.c->size() != rows / per) {
    throw ShapeError("neuron problem: rows do not split into samples");
  }
  if (problem.q->size() != rows) {
    throw ShapeError("neuron problem: one output coefficient per row needed");
  }
  if (per > 1 && problem.objective == NeuronObjective::kTangent) {
    problem.objective = NeuronObjective::kNoRelu;
  }
  return problem;
}

}  // namespace

NeuronOracle::NeuronOracle(NeuronProblem problem, BinaryWeightVector start,
                           OracleOptions options)
    : problem_(Normalize(std::move(problem))),
      options_(options),
      cache_(problem_.columns, std::move(start), problem_.offset,
             problem_.coef, options_) {
  RebuildTerms();
}

double NeuronOracle::SampleTerm(size_t s, double inner_or_t) const {
  if (problem_.units_per_sample == 1) {
    return NeuronObjectiveValue({(*problem_.q)[s], (*problem_.c)[s]},
                                inner_or_t, problem_.objective);
  }
  return Softplus((*problem_.c)[s] + inner_or_t);
}

void NeuronOracle::RebuildTerms() {
  const auto t = cache_.margins();
  const size_t n = problem_.c->size();
  const size_t per = static_cast<size_t>(problem_.units_per_sample);
  inner_.assign(n, 0.0);
  terms_.assign(n, 0.0);
  value_ = 0.0;
  for (size_t s = 0; s < n; ++s) {
    if (per == 1) {
      inner_[s] = t[s];
    } else {
      double acc = 0.0;
      for (size_t u = s * per; u < (s + 1) * per; ++u) {
        acc += UnitContribution((*problem_.q)[u], t[u], problem_.objective);
      }
      inner_[s] = acc;
    }
    terms_[s] = SampleTerm(s, inner_[s]);
    value_ += terms_[s];
  }
  proposal_valid_ = false;
}

double NeuronOracle::ComputeMarginal(int i) {
  cache_.Propose(i, proposal_);
  const auto t_old = cache_.margins();
  const auto& q = *problem_.q;
  const size_t per = static_cast<size_t>(problem_.units_per_sample);
  touched_.clear();
  touched_inner_.clear();
  touched_terms_.clear();
  double delta = 0.0;
  size_t k = 0;
  const size_t m = proposal_.rows.size();
  while (k < m) {
    const size_t s = proposal_.rows[k] / per;
    double inner = inner_[s];
    if (per == 1) {
      inner = proposal_.margins[k];
      ++k;
    } else {
      while (k < m && proposal_.rows[k] / per == s) {
        const size_t u = proposal_.rows[k];
        inner += UnitContribution(q[u], proposal_.margins[k],
                                  problem_.objective) -
                 UnitContribution(q[u], t_old[u], problem_.objective);
        ++k;
      }
    }
    const double term = SampleTerm(s, inner);
    touched_.push_back(static_cast<uint32_t>(s));
    touched_inner_.push_back(inner);
    touched_terms_.push_back(term);
    delta += term - terms_[s];
  }
  proposal_delta_ = delta;
  proposal_valid_ = true;
  return delta;
}

void NeuronOracle::ApplyFlip(int i) {
  if (!proposal_valid_ || proposal_.coordinate != i) ComputeMarginal(i);
  if (cache_.Commit(proposal_)) {
    RebuildTerms();
    return;
  }
  for (size_t k = 0; k < touched_.size(); ++k) {
    inner_[touched_[k]] = touched_inner_[k];
    terms_[touched_[k]] = touched_terms_[k];
  }
  value_ += proposal_delta_;
  proposal_valid_ = false;
}

double NeuronOracle::ValueFromMargins(std::span<const double> t) const {
  const size_t n = problem_.c->size();
  const size_t per = static_cast<size_t>(problem_.units_per_sample);
  double total = 0.0;
  for (size_t s = 0; s < n; ++s) {
    double inner = 0.0;
    if (per == 1) {
      inner = t[s];
    } else {
      for (size_t u = s * per; u < (s + 1) * per; ++u) {
        inner += UnitContribution((*problem_.q)[u], t[u], problem_.objective);
      }
    }
    total += SampleTerm(s, inner);
  }
  return total;
}

double NeuronOracle::Evaluate(const BinaryWeightVector& pattern) const {
  return ValueFromMargins(cache_.MarginsFor(pattern));
}

std::unique_ptr<SetFunctionOracle> NeuronOracle::CloneAt(
    const BinaryWeightVector& start) const {
  return std::make_unique<NeuronOracle>(problem_, start, options_);
}

}  // namespace lbw
