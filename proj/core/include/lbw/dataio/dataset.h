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

// MNIST / CIFAR-10 loading and signed binary task construction.
//
// Pixels are scaled by 1/255 into [0, 1] with no centering: the
// supermodularity results used by the optimizers need elementwise
// non-negative inputs.

#ifndef LBW_DATAIO_DATASET_H_
#define LBW_DATAIO_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lbw/common/matrix.h"

namespace lbw {

// Image geometry carried along with the flat features (channel-major,
// i.e. CHW order inside each row).
struct ImageShape {
  int channels = 1;
  int height = 1;
  int width = 1;
  int size() const { return channels * height * width; }
  friend bool operator==(const ImageShape&, const ImageShape&) = default;
};

struct Dataset {
  FeatureMatrix features;  // n x d, row-major
  std::vector<int> labels;
  int num_classes = 10;
  ImageShape shape;

  size_t n() const { return features.rows(); }
  size_t d() const { return features.cols(); }
};

struct BinaryTask {
  FeatureMatrix features;  // n x d
  std::vector<double> y;   // +1 / -1
  ImageShape shape;

  size_t n() const { return features.rows(); }
  size_t d() const { return features.cols(); }
  size_t CountPositive() const;
};

// Throws PathError (missing file, with a hint about LBW_DATA_DIR) or
// DataFormatError: kBadMagic when images are not 2051 / labels not 2049,
// kCountMismatch when the two files disagree on n, kTruncated for short files.
Dataset LoadMnist(const std::filesystem::path& image_path,
                  const std::filesystem::path& label_path);

// Each file must be a whole number of 3073-byte records
// (1 label byte + 3072 CHW pixel bytes); kBadRecordSize otherwise.
Dataset LoadCifar10(std::span<const std::filesystem::path> batch_paths);

inline constexpr int kCifarRecordBytes = 3073;

// Keeps samples whose label is in `positive` (y = +1) or `negative`
// (y = -1), in their original order. Throws TaskError when the sets overlap
// or either side matches no sample.
BinaryTask MakeBinaryTask(const Dataset& ds, std::span<const int> positive,
                          std::span<const int> negative);

// Stratified, seeded subset: each class keeps round(fraction * count)
// samples (at least one), original relative order preserved.
// Throws ConfigError unless 0 < fraction <= 1.
BinaryTask Subsample(const BinaryTask& task, double fraction, uint64_t seed);

// True when every feature lies in [0, 1].
bool FeaturesInUnitRange(const FeatureMatrix& features);

// Standard file locations under a data root.
struct MnistFiles {
  std::filesystem::path train_images, train_labels, test_images, test_labels;
};
MnistFiles MnistFilesUnder(const std::filesystem::path& root);

struct CifarFiles {
  std::vector<std::filesystem::path> train_batches;
  std::vector<std::filesystem::path> test_batches;
};
CifarFiles CifarFilesUnder(const std::filesystem::path& root);

}  // namespace lbw

#endif  // LBW_DATAIO_DATASET_H_
