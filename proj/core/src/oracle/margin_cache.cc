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

#include "lbw/oracle/margin_cache.h"

#include <algorithm>
#include <cmath>

#include "lbw/common/errors.h"

namespace lbw {

MarginCache::MarginCache(std::shared_ptr<const ColumnSource> source,
                         BinaryWeightVector weights, std::vector<double> offset,
                         double coef, OracleOptions options)
    : source_(std::move(source)),
      weights_(std::move(weights)),
      offset_(std::move(offset)),
      coef_(coef),
      options_(options) {
  if (source_->num_cols() != weights_.dimension()) {
    throw ShapeError("weight dimension " +
                     std::to_string(weights_.dimension()) +
                     " does not match input dimension " +
                     std::to_string(source_->num_cols()));
  }
  if (!offset_.empty() && offset_.size() != source_->num_rows()) {
    throw ShapeError("margin offset length does not match the row count");
  }
  if (options_.refresh_interval < 1) {
    throw ConfigError("refresh interval must be >= 1");
  }
  margins_ = MarginsFor(weights_);
}

std::vector<double> MarginsOf(const ColumnSource& source,
                              const BinaryWeightVector& w,
                              std::span<const double> offset, double coef) {
  if (source.num_cols() != w.dimension()) {
    throw ShapeError("pattern dimension does not match input dimension");
  }
  if (!offset.empty() && offset.size() != source.num_rows()) {
    throw ShapeError("margin offset length does not match the row count");
  }
  std::vector<double> z(source.num_rows(), 0.0);
  if (!offset.empty()) z.assign(offset.begin(), offset.end());
  std::vector<double> scratch;
  const double lo = coef * w.levels().alpha;
  const double hi = coef * w.levels().beta;
  for (int i = 0; i < w.dimension(); ++i) {
    const double wi = w.bit_unchecked(i) ? hi : lo;
    if (wi == 0.0) continue;
    const auto col = source.Column(i, scratch);
    for (size_t r = 0; r < col.size(); ++r) z[r] += wi * col[r];
  }
  return z;
}

std::vector<double> MarginCache::MarginsFor(
    const BinaryWeightVector& pattern) const {
  return MarginsOf(*source_, pattern, offset_, coef_);
}

void MarginCache::Propose(int i, Proposal& out) const {
  const double delta = weights_.bit(i)
                           ? weights_.levels().alpha - weights_.levels().beta
                           : weights_.levels().beta - weights_.levels().alpha;
  const double shift = coef_ * delta;
  const auto col = source_->Column(i, scratch_);
  out.coordinate = i;
  out.rows.clear();
  out.margins.clear();
  for (size_t r = 0; r < col.size(); ++r) {
    if (col[r] == 0.0) continue;
    out.rows.push_back(static_cast<uint32_t>(r));
    out.margins.push_back(margins_[r] + shift * col[r]);
  }
}

bool MarginCache::Commit(const Proposal& proposal) {
  if (options_.inject_sign_fault) {
    for (size_t k = 0; k < proposal.rows.size(); ++k) {
      double& z = margins_[proposal.rows[k]];
      z = 2.0 * z - proposal.margins[k];
    }
  } else {
    for (size_t k = 0; k < proposal.rows.size(); ++k) {
      margins_[proposal.rows[k]] = proposal.margins[k];
    }
  }
  weights_.Flip(proposal.coordinate);
  ++total_flips_;
  if (++flips_since_refresh_ >= options_.refresh_interval) {
    Recompute();
    return true;
  }
  return false;
}

void MarginCache::Recompute() {
  margins_ = MarginsFor(weights_);
  flips_since_refresh_ = 0;
  ++refresh_count_;
}

double MarginCache::MaxDrift() const {
  const auto fresh = MarginsFor(weights_);
  double worst = 0.0;
  for (size_t r = 0; r < fresh.size(); ++r) {
    worst = std::max(worst, std::abs(fresh[r] - margins_[r]));
  }
  return worst;
}

}  // namespace lbw
