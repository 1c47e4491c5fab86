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

// Quantized weight vectors.
//
// A BinaryWeightVector stores a d-length vector over two real levels
// {alpha, beta} as a bit set S = {i : w_i = beta}. A MultiComponentWeight
// combines B such vectors with signs and a common scale to realize ternary
// and wider fixed-point weights:
//
//   w = scale * sum_j signs_j * dense(component_j)
//
// Scheme-built weights keep every component on levels {0, 1}, so each
// component is an ordinary 0/1 set-function variable for the optimizers.

#ifndef LBW_QUANTCORE_WEIGHTS_H_
#define LBW_QUANTCORE_WEIGHTS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace lbw {

struct QuantLevels {
  double alpha = 0.0;
  double beta = 1.0;

  // Validating constructor: throws InvalidLevelsError unless both levels are
  // finite and alpha < beta.
  static QuantLevels Make(double alpha, double beta);
  static QuantLevels ZeroOne() { return {0.0, 1.0}; }
  // {-magnitude, +magnitude}.
  static QuantLevels Symmetric(double magnitude);

  double spread() const { return beta - alpha; }
  void Validate() const;

  friend bool operator==(const QuantLevels&, const QuantLevels&) = default;
};

enum class InitKind { kAllAlpha, kAllBeta, kSeededRandom };

struct WeightInit {
  InitKind kind = InitKind::kAllAlpha;
  uint64_t seed = 0;

  static WeightInit AllAlpha() { return {InitKind::kAllAlpha, 0}; }
  static WeightInit AllBeta() { return {InitKind::kAllBeta, 0}; }
  static WeightInit SeededRandom(uint64_t seed) {
    return {InitKind::kSeededRandom, seed};
  }
};

class BinaryWeightVector {
 public:
  // Throws InvalidDimensionError for d < 1 and InvalidLevelsError for bad
  // levels. Random bits are fair coin flips from the seeded stream.
  static BinaryWeightVector Create(int d, QuantLevels levels, WeightInit init);

  // From explicit membership flags (true => beta).
  static BinaryWeightVector FromBits(std::span<const bool> high,
                                     QuantLevels levels);
  static BinaryWeightVector FromBits(const std::vector<bool>& high,
                                     QuantLevels levels);
  // From a subset mask over d <= 64 coordinates; bit i of `mask` is w_i.
  static BinaryWeightVector FromMask(uint64_t mask, int d, QuantLevels levels);
  // From LSB-first little-endian packed bytes; padding bits are ignored.
  static BinaryWeightVector FromPacked(int d, QuantLevels levels,
                                       std::span<const uint8_t> bytes);

  int dimension() const { return d_; }
  const QuantLevels& levels() const { return levels_; }

  // Bounds-checked accessors (OutOfRangeError).
  bool bit(int i) const;
  double value(int i) const;

  // Unchecked, for inner loops.
  bool bit_unchecked(int i) const {
    return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1ULL;
  }

  // Toggles coordinate i in place. Returns new level minus old level.
  double Flip(int i);
  void Set(int i, bool high);

  std::vector<double> Dense() const;
  // Number of coordinates at beta, |S|.
  int CountHigh() const;
  std::vector<uint8_t> PackedBytes() const;
  // Packed form of the first min(d, 64) bits.
  uint64_t LowMask() const;

  friend bool operator==(const BinaryWeightVector&,
                         const BinaryWeightVector&) = default;

 private:
  BinaryWeightVector(int d, QuantLevels levels)
      : d_(d), levels_(levels), words_((static_cast<size_t>(d) + 63) / 64) {}
  void CheckIndex(int i) const;
  void ClearPadding();

  int d_;
  QuantLevels levels_;
  std::vector<uint64_t> words_;
};

// Functional flip: copy of `w` with coordinate i toggled, plus the delta.
struct FlipResult {
  BinaryWeightVector weights;
  double delta;
};
FlipResult Flipped(const BinaryWeightVector& w, int i);

// Number of +1-signed components in the B-component scheme: ceil(B/2).
inline int PositiveComponentCount(int bits) { return (bits + 1) / 2; }

class MultiComponentWeight {
 public:
  // Throws ShapeError when components disagree on d, ConfigError for an
  // empty component list, a sign outside {+1,-1}, or a non-positive scale.
  MultiComponentWeight(std::vector<BinaryWeightVector> components,
                       std::vector<int> signs, double scale);

  // B = 1 wrapper around a single {alpha, beta} vector with scale 1.
  static MultiComponentWeight Single(BinaryWeightVector w);

  // The B-component scheme: components on {0,1}, the first ceil(B/2) signed
  // +1 and the rest -1, scale = max_magnitude / ceil(B/2) so the largest
  // attainable |w_i| is max_magnitude. B = 2 with max_magnitude 1 is the
  // ternary {-1, 0, 1} construction.
  static MultiComponentWeight Scheme(int d, int bits, double max_magnitude,
                                     WeightInit init);

  int num_components() const { return static_cast<int>(components_.size()); }
  int dimension() const { return components_.front().dimension(); }
  double scale() const { return scale_; }
  int sign(int j) const { return signs_.at(static_cast<size_t>(j)); }
  const std::vector<int>& signs() const { return signs_; }
  const BinaryWeightVector& component(int j) const {
    return components_.at(static_cast<size_t>(j));
  }
  BinaryWeightVector& mutable_component(int j) {
    return components_.at(static_cast<size_t>(j));
  }
  const std::vector<BinaryWeightVector>& components() const {
    return components_;
  }

  // Coefficient multiplying dense(component_j) in the composition.
  double ComponentCoefficient(int j) const { return scale_ * sign(j); }

  // w = scale * sum_j signs_j * dense(component_j), summed in component order.
  std::vector<double> Compose() const;
  double ComposeAt(int i) const;

  friend bool operator==(const MultiComponentWeight&,
                         const MultiComponentWeight&) = default;

 private:
  std::vector<BinaryWeightVector> components_;
  std::vector<int> signs_;
  double scale_;
};

}  // namespace lbw

#endif  // LBW_QUANTCORE_WEIGHTS_H_
