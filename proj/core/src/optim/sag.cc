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

#include "lbw/optim/sag.h"

#include <algorithm>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"
#include "lbw/oracle/logistic.h"

namespace lbw {

template <typename T>
SagResult Sag(const Matrix<T>& x, std::span<const double> y,
              const SagConfig& cfg, std::span<const double> w0, double b0) {
  const size_t n = x.rows();
  const size_t d = x.cols();
  if (y.size() != n) throw ShapeError("SAG: label count mismatch");
  if (!w0.empty() && w0.size() != d) {
    throw ShapeError("SAG: initial weights have the wrong dimension");
  }
  if (cfg.epochs < 0) throw ConfigError("SAG epochs must be >= 0");

  SagResult r;
  r.w = w0.empty() ? std::vector<double>(d, 0.0)
                   : std::vector<double>(w0.begin(), w0.end());
  r.intercept = b0;
  if (n == 0 || cfg.epochs == 0) return r;

  double max_sq = 0.0;
  for (size_t s = 0; s < n; ++s) {
    double sq = cfg.fit_intercept ? 1.0 : 0.0;
    for (const T v : x.row(s)) sq += static_cast<double>(v) * v;
    max_sq = std::max(max_sq, sq);
  }
  if (max_sq == 0.0) return r;  // no input carries signal
  const double step = 1.0 / (0.25 * max_sq + cfg.lambda);

  std::vector<double> table(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<double> grad_sum(d, 0.0);
  double grad_sum_b = 0.0;
  size_t visited = 0;
  Rng rng(cfg.seed);
  const size_t steps = static_cast<size_t>(cfg.epochs) * n;
  for (size_t t = 0; t < steps; ++t) {
    const size_t s = static_cast<size_t>(rng.UniformIndex(n));
    const auto row = x.row(s);
    double z = r.intercept;
    for (size_t j = 0; j < d; ++j) z += r.w[j] * row[j];
    // d/dz log(1 + exp(-y z)) = -y sigmoid(-y z)
    const double g = -y[s] * Sigmoid(-y[s] * z);
    const double change = g - table[s];
    if (change != 0.0) {
      for (size_t j = 0; j < d; ++j) grad_sum[j] += change * row[j];
      grad_sum_b += change;
    }
    table[s] = g;
    if (!seen[s]) {
      seen[s] = 1;
      ++visited;
    }
    const double inv = 1.0 / static_cast<double>(visited);
    for (size_t j = 0; j < d; ++j) {
      r.w[j] -= step * (grad_sum[j] * inv + cfg.lambda * r.w[j]);
    }
    if (cfg.fit_intercept) r.intercept -= step * grad_sum_b * inv;
  }
  return r;
}

template SagResult Sag<float>(const Matrix<float>&, std::span<const double>,
                              const SagConfig&, std::span<const double>,
                              double);
template SagResult Sag<double>(const Matrix<double>&, std::span<const double>,
                               const SagConfig&, std::span<const double>,
                               double);

}  // namespace lbw
