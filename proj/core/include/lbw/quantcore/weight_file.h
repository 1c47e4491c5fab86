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

// Binary weight file, all integers and floats little-endian:
//
//   "LBWQ"            4 bytes magic
//   u8  version       = 1
//   u32 d
//   u8  B             component count, >= 1
//   B times:
//     f64 alpha
//     f64 beta
//     i8  sign        +1 / -1
//     f64 scale
//     ceil(d/8) bytes packed bits, LSB-first within each byte
//
// Padding bits of the last payload byte are written as zero.

#ifndef LBW_QUANTCORE_WEIGHT_FILE_H_
#define LBW_QUANTCORE_WEIGHT_FILE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lbw/quantcore/weights.h"

namespace lbw {

inline constexpr uint8_t kWeightFileVersion = 1;

std::vector<uint8_t> SerializeWeights(const MultiComponentWeight& w);
std::vector<uint8_t> SerializeWeights(const BinaryWeightVector& w);

// Parses exactly one record; throws ParseError (see ParseError::Kind) on
// bad magic/version, truncation, alpha >= beta, invalid sign or scale, or
// trailing bytes.
MultiComponentWeight DeserializeWeights(std::span<const uint8_t> bytes);

// Parses one record starting at `offset` and advances it. Used for files
// that concatenate several records (one per weight-matrix row).
MultiComponentWeight DeserializeWeightsAt(std::span<const uint8_t> bytes,
                                          size_t& offset);

void WriteWeightFile(const std::filesystem::path& path,
                     const MultiComponentWeight& w);
void WriteWeightRows(const std::filesystem::path& path,
                     std::span<const MultiComponentWeight> rows);
MultiComponentWeight ReadWeightFile(const std::filesystem::path& path);
std::vector<MultiComponentWeight> ReadWeightRows(
    const std::filesystem::path& path);

}  // namespace lbw

#endif  // LBW_QUANTCORE_WEIGHT_FILE_H_
