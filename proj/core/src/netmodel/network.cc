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

#include "lbw/netmodel/network.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"

namespace lbw {

Matrix<double> Im2Col(std::span<const double> image, const ConvGeometry& g) {
  g.Validate();
  if (image.size() != static_cast<size_t>(g.input.size())) {
    throw ShapeError("image size does not match the convolution input");
  }
  const int k = g.kernel;
  const int oh = g.out_height();
  const int ow = g.out_width();
  const int h = g.input.height;
  const int w = g.input.width;
  Matrix<double> patches(static_cast<size_t>(oh) * ow,
                         static_cast<size_t>(g.patch_size()));
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      double* row = patches.row(static_cast<size_t>(oy) * ow + ox).data();
      for (int c = 0; c < g.input.channels; ++c) {
        for (int ky = 0; ky < k; ++ky) {
          const int iy = oy * g.stride - g.padding + ky;
          for (int kx = 0; kx < k; ++kx) {
            const int ix = ox * g.stride - g.padding + kx;
            const bool inside = iy >= 0 && iy < h && ix >= 0 && ix < w;
            row[(c * k + ky) * k + kx] =
                inside ? image[(static_cast<size_t>(c) * h + iy) * w + ix]
                       : 0.0;
          }
        }
      }
    }
  }
  return patches;
}

int Layer::fan_in() const {
  switch (config.kind) {
    case LayerKind::kDense:
      return in_shape.size();
    case LayerKind::kConv:
      return geometry.patch_size();
    case LayerKind::kMaxPool:
      return 0;
  }
  return 0;
}

int Layer::positions() const {
  return config.kind == LayerKind::kConv ? geometry.positions() : 1;
}

void Layer::RefreshRow(int k) {
  const auto dense = rows.at(static_cast<size_t>(k)).Compose();
  std::copy(dense.begin(), dense.end(),
            dense_weights.row(static_cast<size_t>(k)).begin());
}

void Layer::Apply(std::span<const double> in, std::span<double> out) const {
  switch (config.kind) {
    case LayerKind::kDense: {
      for (int u = 0; u < units(); ++u) {
        const auto w = dense_weights.row(static_cast<size_t>(u));
        double z = bias[static_cast<size_t>(u)];
        for (size_t j = 0; j < w.size(); ++j) z += w[j] * in[j];
        out[static_cast<size_t>(u)] = z > 0.0 ? z : 0.0;
      }
      break;
    }
    case LayerKind::kConv: {
      const auto patches = Im2Col(in, geometry);
      const size_t positions = patches.rows();
      for (int u = 0; u < units(); ++u) {
        const auto w = dense_weights.row(static_cast<size_t>(u));
        for (size_t p = 0; p < positions; ++p) {
          const auto patch = patches.row(p);
          double z = bias[static_cast<size_t>(u)];
          for (size_t j = 0; j < w.size(); ++j) z += w[j] * patch[j];
          out[static_cast<size_t>(u) * positions + p] = z > 0.0 ? z : 0.0;
        }
      }
      break;
    }
    case LayerKind::kMaxPool: {
      const int s = config.kernel;
      const int h = in_shape.height;
      const int w = in_shape.width;
      for (int c = 0; c < out_shape.channels; ++c) {
        for (int oy = 0; oy < out_shape.height; ++oy) {
          for (int ox = 0; ox < out_shape.width; ++ox) {
            double best = -INFINITY;
            for (int dy = 0; dy < s; ++dy) {
              for (int dx = 0; dx < s; ++dx) {
                const size_t idx =
                    (static_cast<size_t>(c) * h + oy * s + dy) * w + ox * s +
                    dx;
                best = std::max(best, in[idx]);
              }
            }
            out[(static_cast<size_t>(c) * out_shape.height + oy) *
                    out_shape.width +
                ox] = best;
          }
        }
      }
      break;
    }
  }
}

void Layer::Backprop(std::span<const double> in, std::span<const double> out,
                     std::span<const double> grad_out,
                     std::span<double> grad_in) const {
  std::fill(grad_in.begin(), grad_in.end(), 0.0);
  switch (config.kind) {
    case LayerKind::kDense: {
      for (int u = 0; u < units(); ++u) {
        const size_t uu = static_cast<size_t>(u);
        if (out[uu] <= 0.0 || grad_out[uu] == 0.0) continue;
        const auto w = dense_weights.row(uu);
        for (size_t j = 0; j < w.size(); ++j) grad_in[j] += grad_out[uu] * w[j];
      }
      break;
    }
    case LayerKind::kConv: {
      const int k = geometry.kernel;
      const int oh = geometry.out_height();
      const int ow = geometry.out_width();
      const int h = in_shape.height;
      const int w = in_shape.width;
      const size_t positions = static_cast<size_t>(oh) * ow;
      for (int u = 0; u < units(); ++u) {
        const auto wr = dense_weights.row(static_cast<size_t>(u));
        for (int oy = 0; oy < oh; ++oy) {
          for (int ox = 0; ox < ow; ++ox) {
            const size_t o =
                static_cast<size_t>(u) * positions + oy * ow + ox;
            if (out[o] <= 0.0 || grad_out[o] == 0.0) continue;
            const double g = grad_out[o];
            for (int c = 0; c < in_shape.channels; ++c) {
              for (int ky = 0; ky < k; ++ky) {
                const int iy = oy * geometry.stride - geometry.padding + ky;
                if (iy < 0 || iy >= h) continue;
                for (int kx = 0; kx < k; ++kx) {
                  const int ix = ox * geometry.stride - geometry.padding + kx;
                  if (ix < 0 || ix >= w) continue;
                  grad_in[(static_cast<size_t>(c) * h + iy) * w + ix] +=
                      g * wr[static_cast<size_t>((c * k + ky) * k + kx)];
                }
              }
            }
          }
        }
      }
      break;
    }
    case LayerKind::kMaxPool: {
      // The gradient goes to the first maximal input of each window.
      const int s = config.kernel;
      const int h = in_shape.height;
      const int w = in_shape.width;
      for (int c = 0; c < out_shape.channels; ++c) {
        for (int oy = 0; oy < out_shape.height; ++oy) {
          for (int ox = 0; ox < out_shape.width; ++ox) {
            const size_t o =
                (static_cast<size_t>(c) * out_shape.height + oy) *
                    out_shape.width +
                ox;
            if (grad_out[o] == 0.0) continue;
            for (int dy = 0, found = 0; dy < s && !found; ++dy) {
              for (int dx = 0; dx < s; ++dx) {
                const size_t idx =
                    (static_cast<size_t>(c) * h + oy * s + dy) * w + ox * s +
                    dx;
                if (in[idx] == out[o]) {
                  grad_in[idx] += grad_out[o];
                  found = 1;
                  break;
                }
              }
            }
          }
        }
      }
      break;
    }
  }
}

std::vector<Layer> BuildLayers(const Architecture& arch,
                               const ImageShape& input) {
  arch.Validate(input);
  std::vector<Layer> layers;
  ImageShape shape = input;
  for (const auto& config : arch.layers) {
    Layer layer;
    layer.config = config;
    layer.in_shape = shape;
    switch (config.kind) {
      case LayerKind::kDense:
        layer.in_shape = {shape.size(), 1, 1};
        layer.out_shape = {config.units, 1, 1};
        break;
      case LayerKind::kConv:
        layer.geometry = {shape, config.kernel, config.stride, config.padding};
        layer.out_shape = {config.units, layer.geometry.out_height(),
                           layer.geometry.out_width()};
        break;
      case LayerKind::kMaxPool:
        layer.out_shape = {shape.channels, shape.height / config.kernel,
                           shape.width / config.kernel};
        break;
    }
    shape = layer.out_shape;
    layers.push_back(std::move(layer));
  }
  return layers;
}

NetworkModel NetworkModel::Assemble(
    const Architecture& arch, const ImageShape& input, int bits,
    std::vector<std::vector<MultiComponentWeight>> rows,
    std::vector<double> output_weights, double output_bias) {
  if (bits < 1) throw ConfigError("bit width must be >= 1");
  NetworkModel model;
  model.arch_ = arch;
  model.input_ = input;
  model.bits_ = bits;
  model.layers_ = BuildLayers(arch, input);
  for (size_t i = 0; i < model.layers_.size(); ++i) {
    if (model.layers_[i].quantized()) {
      model.quantized_.push_back(static_cast<int>(i));
    }
  }
  if (rows.size() != model.quantized_.size()) {
    throw ShapeError("expected weight rows for " +
                     std::to_string(model.quantized_.size()) +
                     " quantized layers, got " + std::to_string(rows.size()));
  }
  for (size_t q = 0; q < rows.size(); ++q) {
    Layer& layer = model.layers_[static_cast<size_t>(model.quantized_[q])];
    if (rows[q].size() != static_cast<size_t>(layer.config.units)) {
      throw ShapeError("quantized layer " + std::to_string(q) + " expects " +
                       std::to_string(layer.config.units) + " rows");
    }
    for (const auto& r : rows[q]) {
      if (r.dimension() != layer.fan_in()) {
        throw ShapeError("quantized layer " + std::to_string(q) +
                         ": row dimension " + std::to_string(r.dimension()) +
                         " != fan-in " + std::to_string(layer.fan_in()));
      }
    }
    layer.rows = std::move(rows[q]);
    layer.bias.assign(layer.rows.size(), 0.0);
    layer.dense_weights = Matrix<double>(layer.rows.size(),
                                         static_cast<size_t>(layer.fan_in()));
    for (int k = 0; k < layer.units(); ++k) layer.RefreshRow(k);
  }
  model.set_output(std::move(output_weights), output_bias);
  return model;
}

NetworkModel NetworkModel::Create(const Architecture& arch,
                                  const ImageShape& input, int bits,
                                  uint64_t seed) {
  if (bits < 1) throw ConfigError("bit width must be >= 1");
  const auto layers = BuildLayers(arch, input);
  std::vector<std::vector<MultiComponentWeight>> rows;
  int q = 0;
  for (const auto& layer : layers) {
    if (!layer.quantized()) continue;
    const int d = layer.fan_in();
    const double beta = std::sqrt(2.0 / d);
    std::vector<MultiComponentWeight> layer_rows;
    for (int k = 0; k < layer.config.units; ++k) {
      const uint64_t row_seed = Rng::SplitMix(
          Rng::SplitMix(seed + 0x100000001B3ULL * static_cast<uint64_t>(q)) +
          static_cast<uint64_t>(k));
      const auto init = WeightInit::SeededRandom(row_seed);
      if (bits == 1) {
        layer_rows.push_back(MultiComponentWeight::Single(
            BinaryWeightVector::Create(d, QuantLevels::Symmetric(beta), init)));
      } else {
        layer_rows.push_back(
            MultiComponentWeight::Scheme(d, bits, beta, init));
      }
    }
    rows.push_back(std::move(layer_rows));
    ++q;
  }
  const size_t features = static_cast<size_t>(layers.back().out_size());
  return Assemble(arch, input, bits, std::move(rows),
                  std::vector<double>(features, 0.0), 0.0);
}

int NetworkModel::layer_index(int q) const {
  if (q < 0 || q >= num_quantized()) {
    throw OutOfRangeError("quantized layer " + std::to_string(q) +
                          " out of range [0, " +
                          std::to_string(num_quantized()) + ")");
  }
  return quantized_[static_cast<size_t>(q)];
}

void NetworkModel::set_output(std::vector<double> a, double b) {
  if (a.size() != static_cast<size_t>(feature_size())) {
    throw ShapeError("output weights must have " +
                     std::to_string(feature_size()) + " entries");
  }
  a_ = std::move(a);
  b_ = b;
}

void NetworkModel::SetRow(int q, int k, MultiComponentWeight row) {
  Layer& layer = layers_[static_cast<size_t>(layer_index(q))];
  if (k < 0 || k >= layer.units()) {
    throw OutOfRangeError("row " + std::to_string(k) + " out of range");
  }
  if (row.dimension() != layer.fan_in()) {
    throw ShapeError("row dimension does not match the layer fan-in");
  }
  layer.rows[static_cast<size_t>(k)] = std::move(row);
  layer.RefreshRow(k);
}

const MultiComponentWeight& NetworkModel::row(int q, int k) const {
  return quantized_layer(q).rows.at(static_cast<size_t>(k));
}

std::vector<std::vector<double>> NetworkModel::Trace(
    std::span<const double> x) const {
  if (x.size() != static_cast<size_t>(input_size())) {
    throw ShapeError("input has " + std::to_string(x.size()) +
                     " entries, network expects " +
                     std::to_string(input_size()));
  }
  std::vector<std::vector<double>> acts;
  acts.reserve(layers_.size() + 1);
  acts.emplace_back(x.begin(), x.end());
  for (const auto& layer : layers_) {
    std::vector<double> out(static_cast<size_t>(layer.out_size()));
    layer.Apply(acts.back(), out);
    acts.push_back(std::move(out));
  }
  return acts;
}

double NetworkModel::Forward(std::span<const double> x) const {
  const auto acts = Trace(x);
  double f = b_;
  for (size_t j = 0; j < a_.size(); ++j) f += a_[j] * acts.back()[j];
  return f;
}

BatchTrace NetworkModel::ForwardBatch(const FeatureMatrix& x) const {
  if (x.cols() != static_cast<size_t>(input_size())) {
    throw ShapeError("feature dimension does not match the network input");
  }
  const size_t n = x.rows();
  BatchTrace trace;
  trace.activations.emplace_back(n, x.cols());
  for (const auto& layer : layers_) {
    trace.activations.emplace_back(n, static_cast<size_t>(layer.out_size()));
  }
  trace.outputs.resize(n);
  for (size_t s = 0; s < n; ++s) {
    const auto src = x.row(s);
    auto in0 = trace.activations[0].row(s);
    std::copy(src.begin(), src.end(), in0.begin());
    for (size_t i = 0; i < layers_.size(); ++i) {
      layers_[i].Apply(trace.activations[i].row(s),
                       trace.activations[i + 1].row(s));
    }
    const auto feat = trace.activations.back().row(s);
    double f = b_;
    for (size_t j = 0; j < a_.size(); ++j) f += a_[j] * feat[j];
    trace.outputs[s] = f;
  }
  return trace;
}

std::vector<double> NetworkModel::Outputs(const FeatureMatrix& x) const {
  std::vector<double> out(x.rows());
  std::vector<double> in(x.cols());
  for (size_t s = 0; s < x.rows(); ++s) {
    const auto src = x.row(s);
    std::copy(src.begin(), src.end(), in.begin());
    out[s] = Forward(in);
  }
  return out;
}

std::vector<double> NetworkModel::InputOfLayer(std::span<const double> x,
                                               int i) const {
  auto acts = Trace(x);
  return std::move(acts.at(static_cast<size_t>(i)));
}

std::vector<double> NetworkModel::GradWrtActivation(
    const std::vector<std::span<const double>>& acts, int q) const {
  const size_t target = static_cast<size_t>(layer_index(q));
  if (acts.size() != layers_.size() + 1) {
    throw ShapeError("trace does not match the network depth");
  }
  std::vector<double> grad(a_.begin(), a_.end());
  std::vector<double> next;
  for (size_t i = layers_.size(); i-- > target + 1;) {
    next.assign(static_cast<size_t>(layers_[i].in_size()), 0.0);
    layers_[i].Backprop(acts[i], acts[i + 1], grad, next);
    grad.swap(next);
  }
  return grad;
}

std::vector<double> NetworkModel::GradWrtActivation(std::span<const double> x,
                                                    int q) const {
  const auto acts = Trace(x);
  std::vector<std::span<const double>> views(acts.begin(), acts.end());
  return GradWrtActivation(views, q);
}

Linearization NetworkModel::Linearize(std::span<const double> x,
                                      int q) const {
  const auto acts = Trace(x);
  std::vector<std::span<const double>> views(acts.begin(), acts.end());
  Linearization lin;
  lin.a_hat = GradWrtActivation(views, q);
  double f = b_;
  for (size_t j = 0; j < a_.size(); ++j) f += a_[j] * acts.back()[j];
  const auto& y = acts[static_cast<size_t>(layer_index(q)) + 1];
  double dot = 0.0;
  for (size_t u = 0; u < y.size(); ++u) dot += lin.a_hat[u] * y[u];
  lin.b_hat = f - dot;
  return lin;
}

double NetworkModel::EvaluateLinearization(const Linearization& lin,
                                           std::span<const double> x,
                                           int q) const {
  const int i = layer_index(q);
  const auto in = InputOfLayer(x, i);
  const Layer& layer = layers_[static_cast<size_t>(i)];
  std::vector<double> out(static_cast<size_t>(layer.out_size()));
  layer.Apply(in, out);
  double f = lin.b_hat;
  for (size_t u = 0; u < out.size(); ++u) f += lin.a_hat[u] * out[u];
  return f;
}

}  // namespace lbw
