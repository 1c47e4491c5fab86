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

// Column access to the inputs a weight vector is dotted with. Flipping
// coordinate i shifts every row's inner product by delta * column_i, so the
// oracles only ever need whole columns.

#ifndef LBW_ORACLE_COLUMN_SOURCE_H_
#define LBW_ORACLE_COLUMN_SOURCE_H_

#include <span>
#include <type_traits>
#include <vector>

#include "lbw/common/matrix.h"
#include "lbw/dataio/dataset.h"

namespace lbw {

class ColumnSource {
 public:
  virtual ~ColumnSource() = default;
  virtual size_t num_rows() const = 0;
  virtual int num_cols() const = 0;
  // Column j. May return a view into `scratch` (resized as needed) or into
  // the source's own storage.
  virtual std::span<const double> Column(
      int j, std::vector<double>& scratch) const = 0;
};

// Row-major features stored transposed for contiguous columns. Float
// storage is widened into the scratch buffer on access.
template <typename T>
class DenseColumnsOf : public ColumnSource {
 public:
  explicit DenseColumnsOf(const Matrix<T>& row_major)
      : columns_(row_major.Transposed()) {}
  size_t num_rows() const override { return columns_.cols(); }
  int num_cols() const override { return static_cast<int>(columns_.rows()); }
  std::span<const double> Column(int j,
                                 std::vector<double>& scratch) const override {
    const auto col = columns_.row(static_cast<size_t>(j));
    if constexpr (std::is_same_v<T, double>) {
      return col;
    } else {
      scratch.assign(col.begin(), col.end());
      return {scratch.data(), scratch.size()};
    }
  }

 private:
  Matrix<T> columns_;  // d x n
};

using DenseColumns = DenseColumnsOf<float>;
using DenseColumns64 = DenseColumnsOf<double>;

// Convolution patches gathered on the fly from CHW feature maps. Row
// r = sample * P + position, position p = oy * out_width + ox, and column
// j = c * k * k + ky * k + kx. Out-of-image taps (padding) read as zero.
struct ConvGeometry {
  ImageShape input;
  int kernel = 1;
  int stride = 1;
  int padding = 0;

  int out_height() const {
    return (input.height + 2 * padding - kernel) / stride + 1;
  }
  int out_width() const {
    return (input.width + 2 * padding - kernel) / stride + 1;
  }
  int positions() const { return out_height() * out_width(); }
  int patch_size() const { return input.channels * kernel * kernel; }
  void Validate() const;
};

class ConvColumns : public ColumnSource {
 public:
  ConvColumns(Matrix<double> maps, ConvGeometry geometry);
  size_t num_rows() const override {
    return maps_.rows() * static_cast<size_t>(geometry_.positions());
  }
  int num_cols() const override { return geometry_.patch_size(); }
  std::span<const double> Column(int j,
                                 std::vector<double>& scratch) const override;
  const ConvGeometry& geometry() const { return geometry_; }

 private:
  Matrix<double> maps_;  // n x (C*H*W)
  ConvGeometry geometry_;
};

}  // namespace lbw

#endif  // LBW_ORACLE_COLUMN_SOURCE_H_
