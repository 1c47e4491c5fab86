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

#include "lbw/quantcore/weights.h"

#include <bit>
#include <cmath>
#include <string>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"

namespace lbw {

QuantLevels QuantLevels::Make(double alpha, double beta) {
  QuantLevels levels{alpha, beta};
  levels.Validate();
  return levels;
}

QuantLevels QuantLevels::Symmetric(double magnitude) {
  return Make(-magnitude, magnitude);
}

void QuantLevels::Validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidLevelsError("quantization levels must be finite");
  }
  if (!(alpha < beta)) {
    throw InvalidLevelsError("quantization levels require alpha < beta, got " +
                             std::to_string(alpha) + " >= " +
                             std::to_string(beta));
  }
}

BinaryWeightVector BinaryWeightVector::Create(int d, QuantLevels levels,
                                              WeightInit init) {
  if (d < 1) {
    throw InvalidDimensionError("weight vector dimension must be >= 1, got " +
                                std::to_string(d));
  }
  levels.Validate();
  BinaryWeightVector w(d, levels);
  switch (init.kind) {
    case InitKind::kAllAlpha:
      break;
    case InitKind::kAllBeta:
      for (auto& word : w.words_) word = ~0ULL;
      break;
    case InitKind::kSeededRandom: {
      Rng rng(init.seed);
      for (auto& word : w.words_) word = rng.NextU64();
      break;
    }
  }
  w.ClearPadding();
  return w;
}

BinaryWeightVector BinaryWeightVector::FromBits(std::span<const bool> high,
                                                QuantLevels levels) {
  BinaryWeightVector w = Create(static_cast<int>(high.size()), levels,
                                WeightInit::AllAlpha());
  for (size_t i = 0; i < high.size(); ++i) {
    if (high[i]) w.Set(static_cast<int>(i), true);
  }
  return w;
}

BinaryWeightVector BinaryWeightVector::FromBits(const std::vector<bool>& high,
                                                QuantLevels levels) {
  BinaryWeightVector w = Create(static_cast<int>(high.size()), levels,
                                WeightInit::AllAlpha());
  for (size_t i = 0; i < high.size(); ++i) {
    if (high[i]) w.Set(static_cast<int>(i), true);
  }
  return w;
}

BinaryWeightVector BinaryWeightVector::FromMask(uint64_t mask, int d,
                                                QuantLevels levels) {
  if (d > 64) throw InvalidDimensionError("FromMask supports d <= 64");
  BinaryWeightVector w = Create(d, levels, WeightInit::AllAlpha());
  w.words_[0] = mask;
  w.ClearPadding();
  return w;
}

BinaryWeightVector BinaryWeightVector::FromPacked(
    int d, QuantLevels levels, std::span<const uint8_t> bytes) {
  BinaryWeightVector w = Create(d, levels, WeightInit::AllAlpha());
  const size_t needed = (static_cast<size_t>(d) + 7) / 8;
  if (bytes.size() < needed) {
    throw ShapeError("packed payload shorter than ceil(d/8) bytes");
  }
  for (size_t b = 0; b < needed; ++b) {
    w.words_[b / 8] |= static_cast<uint64_t>(bytes[b]) << (8 * (b % 8));
  }
  w.ClearPadding();
  return w;
}

void BinaryWeightVector::CheckIndex(int i) const {
  if (i < 0 || i >= d_) {
    throw OutOfRangeError("coordinate " + std::to_string(i) +
                          " outside [0, " + std::to_string(d_) + ")");
  }
}

void BinaryWeightVector::ClearPadding() {
  const int tail = d_ & 63;
  if (tail != 0) words_.back() &= (1ULL << tail) - 1;
}

bool BinaryWeightVector::bit(int i) const {
  CheckIndex(i);
  return bit_unchecked(i);
}

double BinaryWeightVector::value(int i) const {
  return bit(i) ? levels_.beta : levels_.alpha;
}

double BinaryWeightVector::Flip(int i) {
  CheckIndex(i);
  const bool was_high = bit_unchecked(i);
  words_[static_cast<size_t>(i) >> 6] ^= 1ULL << (i & 63);
  return was_high ? levels_.alpha - levels_.beta : levels_.beta - levels_.alpha;
}

void BinaryWeightVector::Set(int i, bool high) {
  CheckIndex(i);
  const uint64_t m = 1ULL << (i & 63);
  if (high) {
    words_[static_cast<size_t>(i) >> 6] |= m;
  } else {
    words_[static_cast<size_t>(i) >> 6] &= ~m;
  }
}

std::vector<double> BinaryWeightVector::Dense() const {
  std::vector<double> out(static_cast<size_t>(d_));
  for (int i = 0; i < d_; ++i) {
    out[static_cast<size_t>(i)] =
        bit_unchecked(i) ? levels_.beta : levels_.alpha;
  }
  return out;
}

int BinaryWeightVector::CountHigh() const {
  int total = 0;
  for (uint64_t word : words_) total += std::popcount(word);
  return total;
}

std::vector<uint8_t> BinaryWeightVector::PackedBytes() const {
  std::vector<uint8_t> out((static_cast<size_t>(d_) + 7) / 8);
  for (size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<uint8_t>(words_[b / 8] >> (8 * (b % 8)));
  }
  return out;
}

uint64_t BinaryWeightVector::LowMask() const { return words_.front(); }

FlipResult Flipped(const BinaryWeightVector& w, int i) {
  BinaryWeightVector copy = w;
  const double delta = copy.Flip(i);
  return {std::move(copy), delta};
}

MultiComponentWeight::MultiComponentWeight(
    std::vector<BinaryWeightVector> components, std::vector<int> signs,
    double scale)
    : components_(std::move(components)),
      signs_(std::move(signs)),
      scale_(scale) {
  if (components_.empty()) {
    throw ConfigError("multi-component weight needs at least one component");
  }
  if (signs_.size() != components_.size()) {
    throw ShapeError("one sign per component required");
  }
  const int d = components_.front().dimension();
  for (const auto& c : components_) {
    if (c.dimension() != d) {
      throw ShapeError("components of a multi-component weight must share d");
    }
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw ConfigError("component signs must be +1/-1");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw ConfigError("component scale must be finite and > 0");
  }
}

MultiComponentWeight MultiComponentWeight::Single(BinaryWeightVector w) {
  std::vector<BinaryWeightVector> comps;
  comps.push_back(std::move(w));
  return MultiComponentWeight(std::move(comps), {1}, 1.0);
}

MultiComponentWeight MultiComponentWeight::Scheme(int d, int bits,
                                                  double max_magnitude,
                                                  WeightInit init) {
  if (bits < 1) throw ConfigError("bit width must be >= 1");
  const int positive = PositiveComponentCount(bits);
  std::vector<BinaryWeightVector> comps;
  std::vector<int> signs;
  for (int j = 0; j < bits; ++j) {
    WeightInit component_init = init;
    if (init.kind == InitKind::kSeededRandom) {
      component_init.seed = Rng::SplitMix(init.seed + static_cast<uint64_t>(j));
    }
    comps.push_back(
        BinaryWeightVector::Create(d, QuantLevels::ZeroOne(), component_init));
    signs.push_back(j < positive ? 1 : -1);
  }
  return MultiComponentWeight(std::move(comps), std::move(signs),
                              max_magnitude / positive);
}

std::vector<double> MultiComponentWeight::Compose() const {
  const int d = dimension();
  std::vector<double> out(static_cast<size_t>(d), 0.0);
  for (size_t j = 0; j < components_.size(); ++j) {
    const auto& c = components_[j];
    const double lo = c.levels().alpha;
    const double hi = c.levels().beta;
    const double sign = signs_[j];
    for (int i = 0; i < d; ++i) {
      out[static_cast<size_t>(i)] += sign * (c.bit_unchecked(i) ? hi : lo);
    }
  }
  for (double& v : out) v *= scale_;
  return out;
}

double MultiComponentWeight::ComposeAt(int i) const {
  double sum = 0.0;
  for (size_t j = 0; j < components_.size(); ++j) {
    sum += signs_[j] * components_[j].value(i);
  }
  return sum * scale_;
}

}  // namespace lbw
