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

#include "lbw/oracle/linear_oracle.h"

#include "lbw/common/errors.h"
#include "lbw/oracle/logistic.h"

namespace lbw {

LinearOracle::LinearOracle(std::shared_ptr<const ColumnSource> columns,
                           std::shared_ptr<const std::vector<double>> y,
                           BinaryWeightVector start, std::vector<double> offset,
                           double coef, OracleOptions options)
    : columns_(std::move(columns)),
      y_(std::move(y)),
      offset_(std::move(offset)),
      coef_(coef),
      options_(options),
      cache_(columns_, std::move(start), offset_, coef_, options_) {
  if (y_->size() != columns_->num_rows()) {
    throw ShapeError("label count does not match the number of samples");
  }
  RebuildTerms();
}

void LinearOracle::RebuildTerms() {
  const auto z = cache_.margins();
  terms_.resize(z.size());
  value_ = 0.0;
  for (size_t r = 0; r < z.size(); ++r) {
    terms_[r] = LogisticTerm((*y_)[r], z[r]);
    value_ += terms_[r];
  }
  proposal_valid_ = false;
}

double LinearOracle::ComputeMarginal(int i) {
  cache_.Propose(i, proposal_);
  const auto& rows = proposal_.rows;
  proposal_terms_.resize(rows.size());
  double delta = 0.0;
  for (size_t k = 0; k < rows.size(); ++k) {
    const double t = LogisticTerm((*y_)[rows[k]], proposal_.margins[k]);
    proposal_terms_[k] = t;
    delta += t - terms_[rows[k]];
  }
  proposal_delta_ = delta;
  proposal_valid_ = true;
  return delta;
}

void LinearOracle::ApplyFlip(int i) {
  if (!proposal_valid_ || proposal_.coordinate != i) ComputeMarginal(i);
  const bool refreshed = cache_.Commit(proposal_);
  if (refreshed) {
    RebuildTerms();
    return;
  }
  for (size_t k = 0; k < proposal_.rows.size(); ++k) {
    terms_[proposal_.rows[k]] = proposal_terms_[k];
  }
  value_ += proposal_delta_;
  proposal_valid_ = false;
}

double LinearOracle::Evaluate(const BinaryWeightVector& pattern) const {
  const auto z = cache_.MarginsFor(pattern);
  return LogisticLoss(z, *y_);
}

std::unique_ptr<SetFunctionOracle> LinearOracle::CloneAt(
    const BinaryWeightVector& start) const {
  return std::make_unique<LinearOracle>(columns_, y_, start, offset_, coef_,
                                        options_);
}

std::unique_ptr<LinearOracle> MakeLinearOracle(const BinaryTask& task,
                                               const BinaryWeightVector& start,
                                               OracleOptions options) {
  if (static_cast<size_t>(start.dimension()) != task.d()) {
    throw ShapeError("weight dimension " + std::to_string(start.dimension()) +
                     " does not match task dimension " +
                     std::to_string(task.d()));
  }
  auto columns = std::make_shared<DenseColumns>(task.features);
  auto y = std::make_shared<std::vector<double>>(task.y);
  return std::make_unique<LinearOracle>(std::move(columns), std::move(y),
                                        start, std::vector<double>{}, 1.0,
                                        options);
}

}  // namespace lbw
