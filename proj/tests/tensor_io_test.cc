// Copyright 2026 The HoughVote Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <limits>
#include <random>

#include "houghvote/errors.h"
#include "houghvote/tensor_io.h"
#include "support/test_support.h"

namespace houghvote {
namespace {

TEST(HvtTest, ByteLayout) {
  HvtTensor t{{2, 1}, {1.0f, -2.5f}};
  const std::string bytes = EncodeHvt(t);
  ASSERT_EQ(bytes.size(), 4u + 4u + 8u + 8u);
  EXPECT_EQ(bytes.substr(0, 4), "HVT1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 2);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2);
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 1);
  // 1.0f = 0x3F800000 little-endian.
  EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 0x00);
  EXPECT_EQ(static_cast<unsigned char>(bytes[19]), 0x3F);
}

TEST(HvtTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  HvtTensor t{{3, 4, 5}, {}};
  std::uniform_int_distribution<std::uint32_t> bits;
  for (int i = 0; i < 60; ++i) {
    float f;
    do {
      f = std::bit_cast<float>(bits(rng));
    } while (std::isnan(f));
    t.values.push_back(f);
  }
  t.values[0] = -0.0f;
  t.values[1] = std::numeric_limits<float>::denorm_min();
  t.values[2] = std::numeric_limits<float>::infinity();
  const auto back = DecodeHvt(EncodeHvt(t));
  ASSERT_EQ(back.dims, t.dims);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint32_t>(back.values[i]), std::bit_cast<std::uint32_t>(t.values[i]));
  }
  const auto path = testing::TempPath("rt.hvt");
  WriteHvt(path, t);
  EXPECT_EQ(EncodeHvt(ReadHvt(path)), EncodeHvt(t));
}

TEST(HvtTest, MalformedInputs) {
  const std::string good = EncodeHvt({{2, 2}, {1, 2, 3, 4}});
  EXPECT_THROW(DecodeHvt("HVT2" + good.substr(4)), ParseError);
  EXPECT_THROW(DecodeHvt(good.substr(0, good.size() - 1)), ParseError);
  EXPECT_THROW(DecodeHvt(good + "x"), ParseError);
  EXPECT_THROW(DecodeHvt("HV"), ParseError);
  EXPECT_THROW(EncodeHvt({{2, 2}, {1, 2, 3}}), ShapeError);
  EXPECT_THROW(ReadHvt(testing::TempPath("missing.hvt")), IoError);
}

TEST(HvtTest, TypedViews) {
  std::mt19937_64 rng(2);
  std::vector<EvidenceTensor> ev;
  for (int c = 0; c < 2; ++c) {
    auto e = testing::RandomEvidence(3, 4, 5, rng);
    for (double& v : e.values()) v = static_cast<float>(v);
    ev.push_back(e);
  }
  const auto back = EvidenceFromHvt(EvidenceToHvt(ev));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], ev[0]);
  EXPECT_EQ(back[1], ev[1]);
  EXPECT_EQ(EvidenceFromHvt({{3, 4, 5}, std::vector<float>(60)}).size(), 1u);
  EXPECT_THROW(EvidenceFromHvt({{3, 4}, std::vector<float>(12)}), ShapeError);

  const std::vector<PresenceMap> maps = {PresenceMap({2, 3}, 0.5)};
  EXPECT_EQ(PresenceFromHvt(PresenceToHvt(maps))[0], maps[0]);
  EXPECT_EQ(PresenceFromHvt({{2, 3}, std::vector<float>(6)}).size(), 1u);

  PairMap pm({2, 2, 2}, 0.25);
  EXPECT_EQ(PairMapFromHvt(PairMapToHvt(pm)), pm);
  EXPECT_THROW(PairMapFromHvt({{2, 2, 3}, std::vector<float>(12)}), ShapeError);
  EXPECT_THROW(PresenceToHvt(std::vector<PresenceMap>{PresenceMap({1, 1}, 1e300)}), ValidationError);
}

}  // namespace
}  // namespace houghvote
