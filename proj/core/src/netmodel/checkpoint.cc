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

#include "lbw/netmodel/checkpoint.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "lbw/common/errors.h"
#include "lbw/quantcore/weight_file.h"

namespace lbw {
namespace {

std::string LayerFile(int q) { return "layer_" + std::to_string(q) + ".lbwq"; }

}  // namespace

void SaveCheckpoint(const NetworkModel& model,
                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw PathError("cannot create checkpoint directory " + dir.string() +
                    ": " + ec.message());
  }
  nlohmann::json files = nlohmann::json::array();
  for (int q = 0; q < model.num_quantized(); ++q) {
    WriteWeightRows(dir / LayerFile(q), model.quantized_layer(q).rows);
    files.push_back(LayerFile(q));
  }
  const auto& shape = model.input_shape();
  nlohmann::json manifest = {
      {"architecture", ToJson(model.architecture())},
      {"input_shape", {shape.channels, shape.height, shape.width}},
      {"bits", model.bits()},
      {"output_weights", model.output_weights()},
      {"output_bias", model.output_bias()},
      {"layer_files", files}};
  std::ofstream out(dir / "model.json");
  if (!out) throw PathError("cannot write " + (dir / "model.json").string());
  out << manifest.dump(2) << "\n";
}

NetworkModel LoadCheckpoint(const std::filesystem::path& dir) {
  std::ifstream in(dir / "model.json");
  if (!in) {
    throw PathError("no checkpoint manifest at " +
                    (dir / "model.json").string());
  }
  nlohmann::json manifest;
  try {
    in >> manifest;
    const auto arch = ArchitectureFromJson(manifest.at("architecture"));
    const auto dims = manifest.at("input_shape").get<std::vector<int>>();
    if (dims.size() != 3) throw ConfigError("input_shape needs 3 entries");
    const ImageShape shape{dims[0], dims[1], dims[2]};
    std::vector<std::vector<MultiComponentWeight>> rows;
    for (const auto& file : manifest.at("layer_files")) {
      rows.push_back(ReadWeightRows(dir / file.get<std::string>()));
    }
    return NetworkModel::Assemble(
        arch, shape, manifest.at("bits").get<int>(), std::move(rows),
        manifest.at("output_weights").get<std::vector<double>>(),
        manifest.at("output_bias").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed checkpoint manifest: " +
                      std::string(e.what()));
  }
}

}  // namespace lbw
