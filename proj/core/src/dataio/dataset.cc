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

#include "lbw/dataio/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"

namespace lbw {
namespace {

constexpr uint32_t kIdxImageMagic = 2051;
constexpr uint32_t kIdxLabelMagic = 2049;
constexpr float kPixelScale = 1.0f / 255.0f;

std::vector<uint8_t> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PathError("cannot open '" + path.string() +
                    "'; point --data-dir or LBW_DATA_DIR at a directory "
                    "containing mnist/ and cifar-10-batches-bin/");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

uint32_t BigEndianU32(const std::vector<uint8_t>& b, size_t at) {
  return (static_cast<uint32_t>(b[at]) << 24) |
         (static_cast<uint32_t>(b[at + 1]) << 16) |
         (static_cast<uint32_t>(b[at + 2]) << 8) |
         static_cast<uint32_t>(b[at + 3]);
}

}  // namespace

size_t BinaryTask::CountPositive() const {
  return static_cast<size_t>(std::count(y.begin(), y.end(), 1.0));
}

Dataset LoadMnist(const std::filesystem::path& image_path,
                  const std::filesystem::path& label_path) {
  const auto images = ReadFile(image_path);
  const auto labels = ReadFile(label_path);
  if (images.size() < 16) {
    throw DataFormatError(DataFormatError::Kind::kTruncated,
                          "IDX image header truncated: " + image_path.string());
  }
  if (labels.size() < 8) {
    throw DataFormatError(DataFormatError::Kind::kTruncated,
                          "IDX label header truncated: " + label_path.string());
  }
  if (BigEndianU32(images, 0) != kIdxImageMagic) {
    throw DataFormatError(DataFormatError::Kind::kBadMagic,
                          "IDX image magic is not 2051: " + image_path.string());
  }
  if (BigEndianU32(labels, 0) != kIdxLabelMagic) {
    throw DataFormatError(DataFormatError::Kind::kBadMagic,
                          "IDX label magic is not 2049: " + label_path.string());
  }
  const size_t n = BigEndianU32(images, 4);
  const size_t rows = BigEndianU32(images, 8);
  const size_t cols = BigEndianU32(images, 12);
  const size_t n_labels = BigEndianU32(labels, 4);
  if (n != n_labels) {
    throw DataFormatError(DataFormatError::Kind::kCountMismatch,
                          "IDX image count " + std::to_string(n) +
                              " != label count " + std::to_string(n_labels));
  }
  const size_t d = rows * cols;
  if (n == 0 || d == 0) {
    throw DataFormatError(DataFormatError::Kind::kDimensionMismatch,
                          "IDX file declares an empty tensor");
  }
  if (images.size() < 16 + n * d || labels.size() < 8 + n) {
    throw DataFormatError(DataFormatError::Kind::kTruncated,
                          "IDX payload shorter than its header declares");
  }
  Dataset ds;
  ds.features = FeatureMatrix(n, d);
  ds.labels.resize(n);
  ds.shape = {1, static_cast<int>(rows), static_cast<int>(cols)};
  auto& data = ds.features.data();
  for (size_t k = 0; k < n * d; ++k) {
    data[k] = static_cast<float>(images[16 + k]) * kPixelScale;
  }
  for (size_t i = 0; i < n; ++i) {
    ds.labels[i] = labels[8 + i];
    if (ds.labels[i] > 9) {
      throw DataFormatError(DataFormatError::Kind::kDimensionMismatch,
                            "MNIST label outside 0..9");
    }
  }
  return ds;
}

Dataset LoadCifar10(std::span<const std::filesystem::path> batch_paths) {
  constexpr size_t kRecord = kCifarRecordBytes;
  constexpr size_t kPixels = kRecord - 1;
  std::vector<std::vector<uint8_t>> files;
  size_t n = 0;
  for (const auto& path : batch_paths) {
    files.push_back(ReadFile(path));
    const auto& bytes = files.back();
    if (bytes.empty() || bytes.size() % kRecord != 0) {
      throw DataFormatError(DataFormatError::Kind::kBadRecordSize,
                            "CIFAR-10 batch size is not a multiple of 3073 "
                            "bytes: " +
                                path.string());
    }
    n += bytes.size() / kRecord;
  }
  if (n == 0) {
    throw DataFormatError(DataFormatError::Kind::kTruncated,
                          "no CIFAR-10 records given");
  }
  Dataset ds;
  ds.features = FeatureMatrix(n, kPixels);
  ds.labels.resize(n);
  ds.shape = {3, 32, 32};
  size_t i = 0;
  for (const auto& bytes : files) {
    for (size_t off = 0; off < bytes.size(); off += kRecord, ++i) {
      ds.labels[i] = bytes[off];
      if (ds.labels[i] > 9) {
        throw DataFormatError(DataFormatError::Kind::kDimensionMismatch,
                              "CIFAR-10 label outside 0..9");
      }
      auto row = ds.features.row(i);
      for (size_t k = 0; k < kPixels; ++k) {
        row[k] = static_cast<float>(bytes[off + 1 + k]) * kPixelScale;
      }
    }
  }
  return ds;
}

BinaryTask MakeBinaryTask(const Dataset& ds, std::span<const int> positive,
                          std::span<const int> negative) {
  const std::set<int> pos(positive.begin(), positive.end());
  const std::set<int> neg(negative.begin(), negative.end());
  for (int c : pos) {
    if (neg.count(c)) {
      throw TaskError("class " + std::to_string(c) +
                      " is on both sides of the binary task");
    }
  }
  std::vector<size_t> keep;
  std::vector<double> y;
  for (size_t i = 0; i < ds.n(); ++i) {
    if (pos.count(ds.labels[i])) {
      keep.push_back(i);
      y.push_back(1.0);
    } else if (neg.count(ds.labels[i])) {
      keep.push_back(i);
      y.push_back(-1.0);
    }
  }
  const auto n_pos = std::count(y.begin(), y.end(), 1.0);
  if (n_pos == 0 || n_pos == static_cast<long>(y.size())) {
    throw TaskError("binary task needs samples on both sides");
  }
  BinaryTask task;
  task.features = FeatureMatrix(keep.size(), ds.d());
  task.y = std::move(y);
  task.shape = ds.shape;
  for (size_t r = 0; r < keep.size(); ++r) {
    auto src = ds.features.row(keep[r]);
    std::copy(src.begin(), src.end(), task.features.row(r).begin());
  }
  return task;
}

BinaryTask Subsample(const BinaryTask& task, double fraction, uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ConfigError("subsample fraction must be in (0, 1]");
  }
  std::vector<size_t> keep;
  Rng rng(seed);
  for (double label : {1.0, -1.0}) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < task.n(); ++i) {
      if (task.y[i] == label) idx.push_back(i);
    }
    if (idx.empty()) continue;
    rng.Shuffle(std::span<size_t>(idx));
    auto take = static_cast<size_t>(
        std::llround(fraction * static_cast<double>(idx.size())));
    take = std::clamp<size_t>(take, 1, idx.size());
    keep.insert(keep.end(), idx.begin(), idx.begin() + take);
  }
  std::sort(keep.begin(), keep.end());
  BinaryTask out;
  out.features = FeatureMatrix(keep.size(), task.d());
  out.y.reserve(keep.size());
  out.shape = task.shape;
  for (size_t r = 0; r < keep.size(); ++r) {
    auto src = task.features.row(keep[r]);
    std::copy(src.begin(), src.end(), out.features.row(r).begin());
    out.y.push_back(task.y[keep[r]]);
  }
  return out;
}

bool FeaturesInUnitRange(const FeatureMatrix& features) {
  return std::all_of(features.data().begin(), features.data().end(),
                     [](float v) { return v >= 0.0f && v <= 1.0f; });
}

MnistFiles MnistFilesUnder(const std::filesystem::path& root) {
  const auto dir = root / "mnist";
  return {dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte",
          dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte"};
}

CifarFiles CifarFilesUnder(const std::filesystem::path& root) {
  const auto dir = root / "cifar-10-batches-bin";
  CifarFiles files;
  for (int b = 1; b <= 5; ++b) {
    files.train_batches.push_back(dir /
                                  ("data_batch_" + std::to_string(b) + ".bin"));
  }
  files.test_batches.push_back(dir / "test_batch.bin");
  return files;
}

}  // namespace lbw
