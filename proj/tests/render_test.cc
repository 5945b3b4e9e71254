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

#include <random>

#include "houghvote/errors.h"
#include "houghvote/render.h"
#include "houghvote/voting.h"
#include "support/test_support.h"

namespace houghvote {
namespace {

VoteField Field() {
  VoteFieldConfig c;
  c.angle_bins = 4;
  c.ring_extents = {2, 8, 16};
  return VoteField(c);
}

TEST(RenderTest, ContributionsSumToPresence) {
  std::mt19937_64 rng(3);
  const VoteField field = Field();
  const auto e = testing::RandomEvidence(20, 24, 9, rng);
  const auto presence = AggregateScatter(e, field);
  for (auto [row, col] : {std::pair{0, 0}, std::pair{10, 12}, std::pair{19, 23}}) {
    const auto c = VoteContributions(e, field, row, col);
    double sum = 0.0;
    for (double v : c.values()) sum += v;
    EXPECT_NEAR(sum, presence(row, col), 1e-12);
  }
}

TEST(RenderTest, OneHotEvidenceLightsSingleSource) {
  const VoteField field = Field();
  EvidenceTensor e({16, 16, 9});
  e(5, 7, 5) = 1.0;  // region 6, outer ring sector at 0°: votes to the right
  const auto presence = AggregateScatter(e, field);
  int row = -1;
  int col = -1;
  for (int y = 0; y < 16 && row < 0; ++y) {
    for (int x = 0; x < 16; ++x) {
      if (presence(y, x) > 0) {
        row = y;
        col = x;
        break;
      }
    }
  }
  ASSERT_GE(row, 0);
  const auto c = VoteContributions(e, field, row, col);
  const auto img = RenderContributions(c);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      const bool source = y == 5 && x == 7;
      EXPECT_EQ(img.at(y, x) != (Rgb{0, 0, 0}), source) << y << "," << x;
    }
  }
  EXPECT_EQ(img.at(5, 7), JetColormap()[255]);
}

TEST(RenderTest, ZeroEvidenceIsUniformDark) {
  const auto c = VoteContributions(EvidenceTensor({8, 8, 9}), Field(), 3, 3);
  const auto img = RenderContributions(c, {}, 2);
  EXPECT_EQ(img.width, 16);
  EXPECT_EQ(img.height, 16);
  for (auto p : img.pixels) EXPECT_EQ(p, 0);
}

TEST(RenderTest, BackgroundGrayscale) {
  DenseTensor<2> c({2, 2});
  c(0, 0) = 1.0;
  DenseTensor<2> bg({2, 2}, 0.5);
  const auto img = RenderContributions(c, bg);
  EXPECT_EQ(img.at(1, 1), (Rgb{128, 128, 128}));
  EXPECT_EQ(img.at(0, 0), JetColormap()[255]);
  EXPECT_THROW(RenderContributions(c, DenseTensor<2>({3, 3})), ShapeError);
}

TEST(RenderTest, JetEndpoints) {
  const auto& jet = JetColormap();
  EXPECT_EQ(jet[0][0], 0);
  EXPECT_GT(jet[0][2], 100);
  EXPECT_GT(jet[255][0], 100);
  EXPECT_EQ(jet[255][2], 0);
}

TEST(RenderTest, TargetOutsideMapThrows) {
  EXPECT_THROW(VoteContributions(EvidenceTensor({8, 8, 9}), Field(), 8, 0), ValidationError);
  EXPECT_THROW(VoteContributions(EvidenceTensor({8, 8, 9}), Field(), 0, -1), ValidationError);
}

TEST(RenderTest, PpmHeader) {
  RgbImage img{2, 1, {1, 2, 3, 4, 5, 6}};
  EXPECT_EQ(EncodePpm(img), std::string("P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06"));
}

}  // namespace
}  // namespace houghvote
