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

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "lbw/common/errors.h"
#include "lbw/quantcore/weight_file.h"
#include "test_util.h"

namespace lbw {
namespace {

TEST(QuantLevelsTest, RejectsUnorderedOrNonFiniteLevels) {
  EXPECT_THROW(QuantLevels::Make(1.0, 1.0), InvalidLevelsError);
  EXPECT_THROW(QuantLevels::Make(2.0, -1.0), InvalidLevelsError);
  EXPECT_THROW(QuantLevels::Make(std::numeric_limits<double>::quiet_NaN(), 1.0),
               InvalidLevelsError);
  EXPECT_THROW(QuantLevels::Make(0.0, std::numeric_limits<double>::infinity()),
               InvalidLevelsError);
  const auto l = QuantLevels::Make(-0.25, 0.5);
  EXPECT_DOUBLE_EQ(l.spread(), 0.75);
  EXPECT_EQ(QuantLevels::Symmetric(0.5), QuantLevels::Make(-0.5, 0.5));
}

TEST(BinaryWeightVectorTest, CreateRejectsEmptyDimension) {
  EXPECT_THROW(BinaryWeightVector::Create(0, QuantLevels::ZeroOne(),
                                          WeightInit::AllAlpha()),
               InvalidDimensionError);
}

TEST(BinaryWeightVectorTest, InitKindsSetEveryCoordinate) {
  const auto levels = QuantLevels::Make(-2.0, 3.0);
  const auto lo = BinaryWeightVector::Create(130, levels, WeightInit::AllAlpha());
  const auto hi = BinaryWeightVector::Create(130, levels, WeightInit::AllBeta());
  EXPECT_EQ(lo.CountHigh(), 0);
  EXPECT_EQ(hi.CountHigh(), 130);
  for (double v : lo.Dense()) EXPECT_EQ(v, -2.0);
  for (double v : hi.Dense()) EXPECT_EQ(v, 3.0);
}

TEST(BinaryWeightVectorTest, SeededRandomIsReproducibleAndBalanced) {
  const auto a = BinaryWeightVector::Create(4000, QuantLevels::ZeroOne(),
                                            WeightInit::SeededRandom(11));
  const auto b = BinaryWeightVector::Create(4000, QuantLevels::ZeroOne(),
                                            WeightInit::SeededRandom(11));
  const auto c = BinaryWeightVector::Create(4000, QuantLevels::ZeroOne(),
                                            WeightInit::SeededRandom(12));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  // Fair coins: 4000 draws stay within 5 standard deviations of 2000.
  EXPECT_NEAR(a.CountHigh(), 2000, 5 * std::sqrt(1000.0));
}

TEST(BinaryWeightVectorTest, FlipReturnsLevelChangeAndIsAnInvolution) {
  auto w = BinaryWeightVector::Create(70, QuantLevels::Make(-0.5, 1.5),
                                      WeightInit::AllAlpha());
  const auto original = w;
  EXPECT_DOUBLE_EQ(w.Flip(65), 2.0);
  EXPECT_TRUE(w.bit(65));
  EXPECT_DOUBLE_EQ(w.value(65), 1.5);
  EXPECT_DOUBLE_EQ(w.Flip(65), -2.0);
  EXPECT_EQ(w, original);
  EXPECT_THROW(w.Flip(70), OutOfRangeError);
  EXPECT_THROW(w.bit(-1), OutOfRangeError);
}

TEST(BinaryWeightVectorTest, MaskAndPackedFormsAgree) {
  const int d = 13;
  const uint64_t mask = 0b1011000110101;
  const auto w = BinaryWeightVector::FromMask(mask, d, QuantLevels::ZeroOne());
  EXPECT_EQ(w.LowMask(), mask);
  for (int i = 0; i < d; ++i) EXPECT_EQ(w.bit(i), ((mask >> i) & 1) != 0);
  const auto bytes = w.PackedBytes();
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], mask & 0xFF);
  EXPECT_EQ(bytes[1], (mask >> 8) & 0xFF);
  // Padding bits in the input are ignored.
  std::vector<uint8_t> noisy = bytes;
  noisy[1] |= 0xE0;
  EXPECT_EQ(BinaryWeightVector::FromPacked(d, QuantLevels::ZeroOne(), noisy), w);
}

TEST(MultiComponentWeightTest, TernarySchemeComposesDifferences) {
  // B = 2 with max magnitude 1: w = b1 - b2 in {-1, 0, 1}.
  auto m = MultiComponentWeight::Scheme(4, 2, 1.0, WeightInit::AllAlpha());
  ASSERT_EQ(m.num_components(), 2);
  EXPECT_EQ(m.sign(0), 1);
  EXPECT_EQ(m.sign(1), -1);
  m.mutable_component(0) =
      BinaryWeightVector::FromMask(0b0011, 4, QuantLevels::ZeroOne());
  m.mutable_component(1) =
      BinaryWeightVector::FromMask(0b0101, 4, QuantLevels::ZeroOne());
  EXPECT_EQ(m.Compose(), (std::vector<double>{0.0, 1.0, -1.0, 0.0}));
  EXPECT_DOUBLE_EQ(m.ComposeAt(2), -1.0);
}

TEST(MultiComponentWeightTest, SchemeReachesMaxMagnitude) {
  for (int bits = 1; bits <= 5; ++bits) {
    auto m = MultiComponentWeight::Scheme(3, bits, 0.6, WeightInit::AllAlpha());
    for (int j = 0; j < bits; ++j) {
      if (m.sign(j) > 0) {
        m.mutable_component(j) = BinaryWeightVector::Create(
            3, QuantLevels::ZeroOne(), WeightInit::AllBeta());
      }
    }
    for (double v : m.Compose()) EXPECT_NEAR(v, 0.6, 1e-12) << "B=" << bits;
  }
}

TEST(MultiComponentWeightTest, RejectsInconsistentComponents) {
  const auto a = BinaryWeightVector::Create(3, QuantLevels::ZeroOne(),
                                            WeightInit::AllAlpha());
  const auto b = BinaryWeightVector::Create(4, QuantLevels::ZeroOne(),
                                            WeightInit::AllAlpha());
  EXPECT_THROW(MultiComponentWeight({a, b}, {1, -1}, 1.0), ShapeError);
  EXPECT_THROW(MultiComponentWeight({a}, {2}, 1.0), ConfigError);
  EXPECT_THROW(MultiComponentWeight({a}, {1}, 0.0), ConfigError);
  EXPECT_THROW(MultiComponentWeight({}, {}, 1.0), ConfigError);
}

TEST(WeightFileTest, RoundTripsSingleAndMultiComponent) {
  const auto single = MultiComponentWeight::Single(BinaryWeightVector::Create(
      77, QuantLevels::Make(-0.3, 0.7), WeightInit::SeededRandom(5)));
  EXPECT_EQ(DeserializeWeights(SerializeWeights(single)), single);

  auto multi = MultiComponentWeight::Scheme(20, 3, 0.9, WeightInit::AllAlpha());
  for (int j = 0; j < 3; ++j) {
    multi.mutable_component(j) = BinaryWeightVector::Create(
        20, QuantLevels::ZeroOne(), WeightInit::SeededRandom(j + 1));
  }
  EXPECT_EQ(DeserializeWeights(SerializeWeights(multi)), multi);

  const auto dir = testing::TempDir("weights");
  WriteWeightFile(dir / "w.lbwq", multi);
  EXPECT_EQ(ReadWeightFile(dir / "w.lbwq"), multi);
  const std::vector<MultiComponentWeight> rows = {single, single};
  WriteWeightRows(dir / "rows.lbwq", rows);
  EXPECT_EQ(ReadWeightRows(dir / "rows.lbwq"), rows);
}

TEST(WeightFileTest, LayoutMatchesTheDocumentedFormat) {
  const auto w = MultiComponentWeight::Single(
      BinaryWeightVector::FromMask(0b101, 3, QuantLevels::Make(-1.0, 2.0)));
  const auto bytes = SerializeWeights(w);
  // magic 4 + version 1 + d 4 + B 1 + (8 + 8 + 1 + 8 + 1).
  ASSERT_EQ(bytes.size(), 36u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "LBWQ");
  EXPECT_EQ(bytes[4], kWeightFileVersion);
  EXPECT_EQ(bytes[5], 3);  // d, little-endian
  EXPECT_EQ(bytes[9], 1);  // B
  EXPECT_EQ(static_cast<int8_t>(bytes[26]), 1);  // sign
  EXPECT_EQ(bytes[35], 0b101);                   // packed payload
}

TEST(WeightFileTest, ReportsEachKindOfCorruption) {
  const auto w = MultiComponentWeight::Single(BinaryWeightVector::Create(
      9, QuantLevels::ZeroOne(), WeightInit::SeededRandom(3)));
  const auto good = SerializeWeights(w);
  auto kind_of = [](std::vector<uint8_t> bytes) {
    try {
      DeserializeWeights(bytes);
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "expected a parse error";
    return ParseError::Kind::kBadMagic;
  };
  auto bad = good;
  bad[0] = 'X';
  EXPECT_EQ(kind_of(bad), ParseError::Kind::kBadMagic);
  bad = good;
  bad[4] = 9;
  EXPECT_EQ(kind_of(bad), ParseError::Kind::kBadVersion);
  bad = good;
  bad.pop_back();
  EXPECT_EQ(kind_of(bad), ParseError::Kind::kTruncated);
  bad = good;
  bad.push_back(0);
  EXPECT_EQ(kind_of(bad), ParseError::Kind::kTrailingBytes);
  bad = good;
  bad[26] = 3;  // sign byte
  EXPECT_EQ(kind_of(bad), ParseError::Kind::kBadSign);
}

}  // namespace
}  // namespace lbw
