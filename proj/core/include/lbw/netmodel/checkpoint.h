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

// Network checkpoints: a directory holding model.json (architecture, input
// shape, bit width, output weights) plus layer_<q>.lbwq per quantized layer,
// each a concatenation of weight-file records, one per row.

#ifndef LBW_NETMODEL_CHECKPOINT_H_
#define LBW_NETMODEL_CHECKPOINT_H_

#include <filesystem>

#include "lbw/netmodel/network.h"

namespace lbw {

void SaveCheckpoint(const NetworkModel& model,
                    const std::filesystem::path& dir);
NetworkModel LoadCheckpoint(const std::filesystem::path& dir);

}  // namespace lbw

#endif  // LBW_NETMODEL_CHECKPOINT_H_
