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

#include "lbw/quantcore/weight_file.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lbw/common/errors.h"

namespace lbw {
namespace {

constexpr char kMagic[4] = {'L', 'B', 'W', 'Q'};

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<uint8_t>(v >> (8 * k)));
}

void PutF64(std::vector<uint8_t>& out, double v) {
  const auto bits = std::bit_cast<uint64_t>(v);
  for (int k = 0; k < 8; ++k) {
    out.push_back(static_cast<uint8_t>(bits >> (8 * k)));
  }
}

class Reader {
 public:
  Reader(std::span<const uint8_t> bytes, size_t offset)
      : bytes_(bytes), pos_(offset) {}

  void Need(size_t n, const char* what) const {
    if (bytes_.size() - pos_ < n) {
      throw ParseError(ParseError::Kind::kTruncated,
                       std::string("weight file truncated while reading ") +
                           what);
    }
  }
  uint8_t U8(const char* what) {
    Need(1, what);
    return bytes_[pos_++];
  }
  uint32_t U32(const char* what) {
    Need(4, what);
    uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      v |= static_cast<uint32_t>(bytes_[pos_ + k]) << (8 * k);
    }
    pos_ += 4;
    return v;
  }
  double F64(const char* what) {
    Need(8, what);
    uint64_t v = 0;
    for (int k = 0; k < 8; ++k) {
      v |= static_cast<uint64_t>(bytes_[pos_ + k]) << (8 * k);
    }
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  std::span<const uint8_t> Bytes(size_t n, const char* what) {
    Need(n, what);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  size_t pos() const { return pos_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_;
};

std::vector<uint8_t> ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PathError("cannot open weight file '" + path.string() + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteAll(const std::filesystem::path& path,
              const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw PathError("cannot write weight file '" + path.string() + "'");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

std::vector<uint8_t> SerializeWeights(const MultiComponentWeight& w) {
  std::vector<uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kWeightFileVersion);
  PutU32(out, static_cast<uint32_t>(w.dimension()));
  out.push_back(static_cast<uint8_t>(w.num_components()));
  for (int j = 0; j < w.num_components(); ++j) {
    const auto& c = w.component(j);
    PutF64(out, c.levels().alpha);
    PutF64(out, c.levels().beta);
    out.push_back(static_cast<uint8_t>(static_cast<int8_t>(w.sign(j))));
    PutF64(out, w.scale());
    const auto packed = c.PackedBytes();
    out.insert(out.end(), packed.begin(), packed.end());
  }
  return out;
}

std::vector<uint8_t> SerializeWeights(const BinaryWeightVector& w) {
  return SerializeWeights(MultiComponentWeight::Single(w));
}

MultiComponentWeight DeserializeWeightsAt(std::span<const uint8_t> bytes,
                                          size_t& offset) {
  Reader r(bytes, offset);
  auto magic = r.Bytes(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw ParseError(ParseError::Kind::kBadMagic,
                     "weight file does not start with 'LBWQ'");
  }
  const uint8_t version = r.U8("version");
  if (version != kWeightFileVersion) {
    throw ParseError(ParseError::Kind::kBadVersion,
                     "unsupported weight file version " +
                         std::to_string(version));
  }
  const uint32_t d = r.U32("dimension");
  if (d == 0 || d > static_cast<uint32_t>(INT32_MAX)) {
    throw ParseError(ParseError::Kind::kTruncated,
                     "weight file declares invalid dimension");
  }
  const uint8_t count = r.U8("component count");
  if (count == 0) {
    throw ParseError(ParseError::Kind::kBadComponentCount,
                     "weight file declares zero components");
  }
  const size_t payload = (static_cast<size_t>(d) + 7) / 8;
  std::vector<BinaryWeightVector> comps;
  std::vector<int> signs;
  double scale = 0.0;
  for (uint8_t j = 0; j < count; ++j) {
    const double alpha = r.F64("alpha");
    const double beta = r.F64("beta");
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha < beta)) {
      throw ParseError(ParseError::Kind::kLevelOrder,
                       "weight file component has alpha >= beta");
    }
    const auto sign = static_cast<int8_t>(r.U8("sign"));
    if (sign != 1 && sign != -1) {
      throw ParseError(ParseError::Kind::kBadSign,
                       "weight file component sign must be +1 or -1");
    }
    const double component_scale = r.F64("scale");
    if (!(component_scale > 0.0) || !std::isfinite(component_scale) ||
        (j > 0 && component_scale != scale)) {
      throw ParseError(ParseError::Kind::kBadScale,
                       "weight file scales must be positive and shared");
    }
    scale = component_scale;
    auto bits = r.Bytes(payload, "payload");
    comps.push_back(BinaryWeightVector::FromPacked(
        static_cast<int>(d), QuantLevels{alpha, beta}, bits));
    signs.push_back(sign);
  }
  offset = r.pos();
  return MultiComponentWeight(std::move(comps), std::move(signs), scale);
}

MultiComponentWeight DeserializeWeights(std::span<const uint8_t> bytes) {
  size_t offset = 0;
  MultiComponentWeight w = DeserializeWeightsAt(bytes, offset);
  if (offset != bytes.size()) {
    throw ParseError(ParseError::Kind::kTrailingBytes,
                     "unexpected bytes after weight record");
  }
  return w;
}

void WriteWeightFile(const std::filesystem::path& path,
                     const MultiComponentWeight& w) {
  WriteAll(path, SerializeWeights(w));
}

void WriteWeightRows(const std::filesystem::path& path,
                     std::span<const MultiComponentWeight> rows) {
  std::vector<uint8_t> bytes;
  for (const auto& row : rows) {
    auto rec = SerializeWeights(row);
    bytes.insert(bytes.end(), rec.begin(), rec.end());
  }
  WriteAll(path, bytes);
}

MultiComponentWeight ReadWeightFile(const std::filesystem::path& path) {
  const auto bytes = ReadAll(path);
  return DeserializeWeights(bytes);
}

std::vector<MultiComponentWeight> ReadWeightRows(
    const std::filesystem::path& path) {
  const auto bytes = ReadAll(path);
  std::vector<MultiComponentWeight> rows;
  size_t offset = 0;
  while (offset < bytes.size()) {
    rows.push_back(DeserializeWeightsAt(bytes, offset));
  }
  return rows;
}

}  // namespace lbw
