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

// Declarative network descriptions. The real-valued output unit is implicit
// and always follows the last listed layer.
//
// JSON form:
//   {"name": "lenet5",
//    "layers": [{"type": "conv", "filters": 6, "kernel": 5},
//               {"type": "maxpool", "size": 2},
//               {"type": "dense", "units": 120}]}
// Conv layers also accept "stride" (default 1) and "padding" (default 0).

#ifndef LBW_NETMODEL_ARCHITECTURE_H_
#define LBW_NETMODEL_ARCHITECTURE_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lbw/dataio/dataset.h"

namespace lbw {

enum class LayerKind { kDense, kConv, kMaxPool };

struct LayerConfig {
  LayerKind kind = LayerKind::kDense;
  int units = 0;    // dense outputs or conv filters
  int kernel = 0;   // conv kernel size or pool window
  int stride = 1;   // conv only; pooling uses stride == window
  int padding = 0;  // conv only

  static LayerConfig Dense(int units) { return {LayerKind::kDense, units}; }
  static LayerConfig Conv(int filters, int kernel, int stride = 1,
                          int padding = 0) {
    return {LayerKind::kConv, filters, kernel, stride, padding};
  }
  static LayerConfig MaxPool(int size) {
    return {LayerKind::kMaxPool, 0, size, size, 0};
  }
  friend bool operator==(const LayerConfig&, const LayerConfig&) = default;
};

struct Architecture {
  std::string name;
  std::vector<LayerConfig> layers;

  int num_quantized() const;
  // Throws ConfigError for empty or malformed layer lists and ShapeError
  // when the layers do not fit `input`.
  void Validate(const ImageShape& input) const;
  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// fc2, fc3, lenet5, cnn6. Throws ConfigError for other names.
Architecture BuiltinArchitecture(const std::string& name);
std::vector<std::string> BuiltinArchitectureNames();

nlohmann::json ToJson(const Architecture& arch);
Architecture ArchitectureFromJson(const nlohmann::json& j);

}  // namespace lbw

#endif  // LBW_NETMODEL_ARCHITECTURE_H_
