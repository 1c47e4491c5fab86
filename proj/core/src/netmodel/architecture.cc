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

#include "lbw/netmodel/architecture.h"

#include "lbw/common/errors.h"
#include "lbw/oracle/column_source.h"

namespace lbw {

int Architecture::num_quantized() const {
  int count = 0;
  for (const auto& layer : layers) {
    count += layer.kind == LayerKind::kMaxPool ? 0 : 1;
  }
  return count;
}

void Architecture::Validate(const ImageShape& input) const {
  if (num_quantized() < 1) {
    throw ConfigError("architecture '" + name +
                      "' needs at least one dense or conv layer");
  }
  ImageShape shape = input;
  bool flat = false;
  for (size_t i = 0; i < layers.size(); ++i) {
    const auto& layer = layers[i];
    const std::string where = "layer " + std::to_string(i) + ": ";
    switch (layer.kind) {
      case LayerKind::kDense:
        if (layer.units < 1) throw ConfigError(where + "dense units < 1");
        shape = {layer.units, 1, 1};
        flat = true;
        break;
      case LayerKind::kConv: {
        if (flat) throw ConfigError(where + "conv after a dense layer");
        if (layer.units < 1) throw ConfigError(where + "conv filters < 1");
        ConvGeometry g{shape, layer.kernel, layer.stride, layer.padding};
        g.Validate();
        shape = {layer.units, g.out_height(), g.out_width()};
        break;
      }
      case LayerKind::kMaxPool:
        if (flat) throw ConfigError(where + "pooling after a dense layer");
        if (layer.kernel < 1) throw ConfigError(where + "pool size < 1");
        if (shape.height < layer.kernel || shape.width < layer.kernel) {
          throw ShapeError(where + "pool window larger than its input");
        }
        shape = {shape.channels, shape.height / layer.kernel,
                 shape.width / layer.kernel};
        break;
    }
  }
}

Architecture BuiltinArchitecture(const std::string& name) {
  using L = LayerConfig;
  if (name == "fc2") return {name, {L::Dense(100)}};
  if (name == "fc3") return {name, {L::Dense(256), L::Dense(100)}};
  if (name == "lenet5") {
    return {name,
            {L::Conv(6, 5), L::MaxPool(2), L::Conv(16, 5), L::MaxPool(2),
             L::Dense(120), L::Dense(84)}};
  }
  if (name == "cnn6") {
    return {name,
            {L::Conv(16, 3), L::Conv(16, 3), L::MaxPool(2), L::Conv(32, 3),
             L::Conv(32, 3), L::MaxPool(2), L::Dense(128), L::Dense(64)}};
  }
  throw ConfigError("unknown architecture '" + name +
                    "' (expected fc2, fc3, lenet5 or cnn6)");
}

std::vector<std::string> BuiltinArchitectureNames() {
  return {"fc2", "fc3", "lenet5", "cnn6"};
}

nlohmann::json ToJson(const Architecture& arch) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : arch.layers) {
    switch (l.kind) {
      case LayerKind::kDense:
        layers.push_back({{"type", "dense"}, {"units", l.units}});
        break;
      case LayerKind::kConv:
        layers.push_back({{"type", "conv"},
                          {"filters", l.units},
                          {"kernel", l.kernel},
                          {"stride", l.stride},
                          {"padding", l.padding}});
        break;
      case LayerKind::kMaxPool:
        layers.push_back({{"type", "maxpool"}, {"size", l.kernel}});
        break;
    }
  }
  return {{"name", arch.name}, {"layers", layers}};
}

Architecture ArchitectureFromJson(const nlohmann::json& j) {
  try {
    Architecture arch;
    arch.name = j.value("name", std::string("custom"));
    for (const auto& l : j.at("layers")) {
      const auto type = l.at("type").get<std::string>();
      if (type == "dense") {
        arch.layers.push_back(LayerConfig::Dense(l.at("units").get<int>()));
      } else if (type == "conv") {
        arch.layers.push_back(LayerConfig::Conv(
            l.at("filters").get<int>(), l.at("kernel").get<int>(),
            l.value("stride", 1), l.value("padding", 0)));
      } else if (type == "maxpool") {
        arch.layers.push_back(LayerConfig::MaxPool(l.at("size").get<int>()));
      } else {
        throw ConfigError("unknown layer type '" + type + "'");
      }
    }
    return arch;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed architecture: ") + e.what());
  }
}

}  // namespace lbw
