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

// Quantized feed-forward networks: a stack of dense / conv layers with ReLU
// (and optional max pooling) followed by one real-valued output unit
//   f(x) = <a, y_L> + b_L.
// "Quantized layer q" counts only dense and conv layers, from 0.

#ifndef LBW_NETMODEL_NETWORK_H_
#define LBW_NETMODEL_NETWORK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lbw/common/matrix.h"
#include "lbw/netmodel/architecture.h"
#include "lbw/oracle/column_source.h"
#include "lbw/quantcore/weights.h"

namespace lbw {

// Patch matrix of one CHW image: row p = oy * out_width + ox, column
// c * k * k + ky * k + kx. Zero outside the image.
Matrix<double> Im2Col(std::span<const double> image, const ConvGeometry& g);

struct Layer {
  LayerConfig config;
  ImageShape in_shape;
  ImageShape out_shape;
  ConvGeometry geometry;  // conv only

  // One weight row per output unit (dense) or filter (conv).
  std::vector<MultiComponentWeight> rows;
  std::vector<double> bias;      // fixed at zero by Create
  Matrix<double> dense_weights;  // units x fan_in, composed from rows

  bool quantized() const { return config.kind != LayerKind::kMaxPool; }
  int units() const { return static_cast<int>(rows.size()); }
  int fan_in() const;
  // Spatial positions sharing one row: conv output positions, 1 for dense.
  int positions() const;
  int in_size() const { return in_shape.size(); }
  int out_size() const { return out_shape.size(); }

  // Recomposes dense_weights row k after rows[k] changed.
  void RefreshRow(int k);
  // out = relu(W in + b) or max pooling.
  void Apply(std::span<const double> in, std::span<double> out) const;
  // Given dL/d(out), writes dL/d(in). ReLU derivative at 0 is 0.
  void Backprop(std::span<const double> in, std::span<const double> out,
                std::span<const double> grad_out,
                std::span<double> grad_in) const;
};

// First-order model of f around one input, exact at that input:
//   f_hat(x') = <a_hat, relu(W_q y_q(x') + b_q)> + b_hat.
struct Linearization {
  std::vector<double> a_hat;  // df / d(output of quantized layer q)
  double b_hat = 0.0;
};

struct BatchTrace {
  // activations[i] is the input of layers[i]; activations.back() holds the
  // features read by the output unit. One row per sample.
  std::vector<Matrix<double>> activations;
  std::vector<double> outputs;
};

class NetworkModel {
 public:
  // Quantized layer q gets levels beta = -alpha = sqrt(2 / fan_in) and a
  // seeded random pattern. bits = 1 stores each row as one {alpha, beta}
  // vector; bits >= 2 uses the multi-component scheme with max magnitude
  // beta. Output weights start at zero.
  static NetworkModel Create(const Architecture& arch, const ImageShape& input,
                             int bits, uint64_t seed);
  // Network with explicit weight rows, one list per quantized layer.
  static NetworkModel Assemble(
      const Architecture& arch, const ImageShape& input, int bits,
      std::vector<std::vector<MultiComponentWeight>> rows,
      std::vector<double> output_weights, double output_bias);

  const Architecture& architecture() const { return arch_; }
  const ImageShape& input_shape() const { return input_; }
  int bits() const { return bits_; }
  int input_size() const { return input_.size(); }
  int feature_size() const { return layers_.back().out_size(); }

  const std::vector<Layer>& layers() const { return layers_; }
  int num_quantized() const { return static_cast<int>(quantized_.size()); }
  // Index into layers() of quantized layer q.
  int layer_index(int q) const;
  const Layer& quantized_layer(int q) const {
    return layers_[static_cast<size_t>(layer_index(q))];
  }

  const std::vector<double>& output_weights() const { return a_; }
  double output_bias() const { return b_; }
  void set_output(std::vector<double> a, double b);

  void SetRow(int q, int k, MultiComponentWeight row);
  const MultiComponentWeight& row(int q, int k) const;

  double Forward(std::span<const double> x) const;
  // Per-sample activations, same layout as BatchTrace::activations.
  std::vector<std::vector<double>> Trace(std::span<const double> x) const;
  BatchTrace ForwardBatch(const FeatureMatrix& x) const;
  std::vector<double> Outputs(const FeatureMatrix& x) const;

  // Activations feeding layers()[i], computed from the sample's input.
  std::vector<double> InputOfLayer(std::span<const double> x, int i) const;

  // d f / d y where y is the (post-ReLU, pre-pooling) output of quantized
  // layer q; `acts` is a trace as returned by Trace().
  std::vector<double> GradWrtActivation(
      const std::vector<std::span<const double>>& acts, int q) const;
  std::vector<double> GradWrtActivation(std::span<const double> x,
                                        int q) const;

  Linearization Linearize(std::span<const double> x, int q) const;
  double EvaluateLinearization(const Linearization& lin,
                               std::span<const double> x, int q) const;

 private:
  Architecture arch_;
  ImageShape input_;
  int bits_ = 1;
  std::vector<Layer> layers_;
  std::vector<int> quantized_;
  std::vector<double> a_;
  double b_ = 0.0;
};

// Layers built from `arch` for `input`, without weights.
std::vector<Layer> BuildLayers(const Architecture& arch,
                               const ImageShape& input);

}  // namespace lbw

#endif  // LBW_NETMODEL_NETWORK_H_
