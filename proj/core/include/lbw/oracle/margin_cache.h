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

#ifndef LBW_ORACLE_MARGIN_CACHE_H_
#define LBW_ORACLE_MARGIN_CACHE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lbw/oracle/column_source.h"
#include "lbw/oracle/set_function.h"
#include "lbw/quantcore/weights.h"

namespace lbw {

// offset_r + coef * <dense(w), u_r> for every row, from scratch. `offset`
// may be empty (all zeros).
std::vector<double> MarginsOf(const ColumnSource& source,
                              const BinaryWeightVector& w,
                              std::span<const double> offset, double coef);

// Maintains z_r = offset_r + coef * <dense(w), u_r> for every row r of a
// ColumnSource under single-coordinate flips, O(rows) per flip. A full
// recompute runs every `refresh_interval` commits to bound drift.
class MarginCache {
 public:
  // Rows whose margin changes when coordinate `coordinate` flips (rows with a
  // zero input entry are skipped) and their would-be margins, ascending.
  struct Proposal {
    int coordinate = -1;
    std::vector<uint32_t> rows;
    std::vector<double> margins;
  };

  // `offset` may be empty (all zeros).
  MarginCache(std::shared_ptr<const ColumnSource> source,
              BinaryWeightVector weights, std::vector<double> offset,
              double coef, OracleOptions options = {});

  size_t size() const { return margins_.size(); }
  std::span<const double> margins() const { return margins_; }
  const BinaryWeightVector& weights() const { return weights_; }
  const ColumnSource& source() const { return *source_; }
  double coef() const { return coef_; }

  // Fills `out` for a flip of coordinate i without changing state.
  void Propose(int i, Proposal& out) const;
  // Applies a proposal computed against the current state. Returns true
  // when the commit triggered a full refresh (callers must then re-derive
  // anything computed from margins).
  bool Commit(const Proposal& proposal);

  void Recompute();
  // Margins of an arbitrary pattern, computed from scratch.
  std::vector<double> MarginsFor(const BinaryWeightVector& pattern) const;
  // max_r |cached z_r - recomputed z_r|.
  double MaxDrift() const;

  int64_t total_flips() const { return total_flips_; }
  int64_t flips_since_refresh() const { return flips_since_refresh_; }
  int64_t refresh_count() const { return refresh_count_; }

 private:
  std::shared_ptr<const ColumnSource> source_;
  BinaryWeightVector weights_;
  std::vector<double> offset_;
  double coef_;
  OracleOptions options_;
  std::vector<double> margins_;
  mutable std::vector<double> scratch_;
  int64_t total_flips_ = 0;
  int64_t flips_since_refresh_ = 0;
  int64_t refresh_count_ = 0;
};

}  // namespace lbw

#endif  // LBW_ORACLE_MARGIN_CACHE_H_
