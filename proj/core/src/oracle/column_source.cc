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

#include "lbw/oracle/column_source.h"

#include "lbw/common/errors.h"

namespace lbw {

void ConvGeometry::Validate() const {
  if (kernel < 1 || stride < 1 || padding < 0) {
    throw ShapeError("convolution needs kernel >= 1, stride >= 1, padding >= 0");
  }
  if (input.channels < 1 || input.height + 2 * padding < kernel ||
      input.width + 2 * padding < kernel) {
    throw ShapeError("convolution kernel larger than its (padded) input");
  }
}

ConvColumns::ConvColumns(Matrix<double> maps, ConvGeometry geometry)
    : maps_(std::move(maps)), geometry_(geometry) {
  geometry_.Validate();
  if (maps_.cols() != static_cast<size_t>(geometry_.input.size())) {
    throw ShapeError("feature maps do not match the convolution input shape");
  }
}

std::span<const double> ConvColumns::Column(
    int j, std::vector<double>& scratch) const {
  const int k = geometry_.kernel;
  const int c = j / (k * k);
  const int ky = (j / k) % k;
  const int kx = j % k;
  const int oh = geometry_.out_height();
  const int ow = geometry_.out_width();
  const int h = geometry_.input.height;
  const int w = geometry_.input.width;
  const size_t positions = static_cast<size_t>(oh) * ow;
  scratch.resize(num_rows());
  for (size_t s = 0; s < maps_.rows(); ++s) {
    const double* plane = maps_.row(s).data() + static_cast<size_t>(c) * h * w;
    double* out = scratch.data() + s * positions;
    for (int oy = 0; oy < oh; ++oy) {
      const int iy = oy * geometry_.stride - geometry_.padding + ky;
      for (int ox = 0; ox < ow; ++ox) {
        const int ix = ox * geometry_.stride - geometry_.padding + kx;
        const bool inside = iy >= 0 && iy < h && ix >= 0 && ix < w;
        out[oy * ow + ox] = inside ? plane[iy * w + ix] : 0.0;
      }
    }
  }
  return {scratch.data(), scratch.size()};
}

}  // namespace lbw
