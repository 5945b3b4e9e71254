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

#include <map>
#include <set>

#include "houghvote/errors.h"
#include "houghvote/field_json.h"
#include "houghvote/vote_field.h"
#include "support/test_support.h"

namespace houghvote {
namespace {

using testing::OracleRegionOf;
using testing::PublishedFields;

VoteFieldConfig Config(int bins, std::vector<int> extents) {
  VoteFieldConfig c;
  c.angle_bins = bins;
  c.ring_extents = std::move(extents);
  return c;
}

TEST(VoteFieldTest, PublishedConfigurations) {
  for (const auto& fc : PublishedFields()) {
    const VoteField field(fc.config);
    EXPECT_EQ(field.region_count(), fc.expected_regions) << fc.name;
    EXPECT_EQ(field.field_size(), fc.expected_size) << fc.name;
  }
}

TEST(VoteFieldTest, SingleRegionField) {
  const VoteField field(Config(1, {2}));
  EXPECT_EQ(field.region_count(), 1);
  EXPECT_EQ(field.field_size(), 3);
  EXPECT_EQ(field.region_size(1), 5);
}

TEST(VoteFieldTest, CenterDiskIsFivePixelCross) {
  const VoteField field(Config(4, {2, 8, 16}));
  std::set<std::pair<int, int>> got;
  for (const auto& o : field.offsets(1)) got.insert({o.dy, o.dx});
  const std::set<std::pair<int, int>> want = {{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}};
  EXPECT_EQ(got, want);
}

TEST(VoteFieldTest, InvalidConfigsThrow) {
  EXPECT_THROW(VoteField(Config(0, {2, 8})), ConfigError);
  EXPECT_THROW(VoteField(Config(4, {8, 8})), ConfigError);
  EXPECT_THROW(VoteField(Config(4, {8, 2})), ConfigError);
  EXPECT_THROW(VoteField(Config(4, {3, 8})), ConfigError);
  EXPECT_THROW(VoteField(Config(4, {})), ConfigError);
  EXPECT_THROW(VoteField(Config(7, {2, 8})), ConfigError);
  auto masked = Config(4, {2, 8});
  masked.masked_regions = {6};
  EXPECT_THROW(VoteField{masked}, ConfigError);
}

TEST(VoteFieldTest, PartitionMatchesOracle) {
  for (const auto& fc : PublishedFields()) {
    const VoteField field(fc.config);
    const int half = field.half_extent();
    std::map<int, int> counts;
    int disk = 0;
    for (int dy = -half; dy <= half; ++dy) {
      for (int dx = -half; dx <= half; ++dx) {
        const auto want = OracleRegionOf(dy, dx, fc.config.angle_bins, fc.config.ring_extents);
        const auto got = RegionOf({dy, dx}, fc.config);
        ASSERT_EQ(got, want) << fc.name << " offset " << dy << "," << dx;
        const int cell = field.region_at(dy + half, dx + half);
        EXPECT_EQ(cell, want ? *want : VoteField::kOutside);
        if (want) {
          ++disk;
          ++counts[*want];
        }
      }
    }
    int total = 0;
    for (int r = 1; r <= field.region_count(); ++r) {
      EXPECT_EQ(field.region_size(r), counts[r]) << fc.name << " region " << r;
      EXPECT_GT(field.region_size(r), 0);
      total += field.region_size(r);
      for (const auto& o : field.offsets(r)) {
        EXPECT_EQ(field.region_at(o.dy + half, o.dx + half), r);
      }
    }
    EXPECT_EQ(total, disk) << fc.name;
  }
}

TEST(VoteFieldTest, RegionOfExamples) {
  const auto config = Config(4, {2, 8, 16});
  EXPECT_EQ(RegionOf({0, 0}, config), 1);
  // Distance 5 lies in the outer annulus; 0° opens its first sector.
  EXPECT_EQ(RegionOf({0, 5}, config), 6);
  EXPECT_EQ(RegionOf({0, 100}, config), std::nullopt);
  // Image "up" is 90°, the second sector.
  EXPECT_EQ(RegionOf({-3, 0}, config), 3);
  EXPECT_EQ(RegionOf({0, -3}, config), 4);
  EXPECT_EQ(RegionOf({3, 0}, config), 5);
  for (const auto& fc : PublishedFields()) EXPECT_EQ(RegionOf({0, 0}, fc.config), 1);
}

TEST(VoteFieldTest, QuarterTurnMovesToNextSector) {
  for (const auto& extents : {std::vector<int>{2, 8, 16}, std::vector<int>{2, 8, 16, 32, 64}}) {
    const auto config = Config(4, extents);
    const VoteField field(config);
    const int half = field.half_extent();
    for (int dy = -half; dy <= half; ++dy) {
      for (int dx = -half; dx <= half; ++dx) {
        const auto r = RegionOf({dy, dx}, config);
        if (!r || *r == 1) continue;
        // Counter-clockwise by 90° on screen: (x, y_up) -> (-y_up, x).
        const auto rotated = RegionOf({-dx, dy}, config);
        ASSERT_TRUE(rotated.has_value());
        const int ring = field.ring_of(*r);
        const int sector = (*r - 2) % 4;
        EXPECT_EQ(*rotated, 2 + (ring - 1) * 4 + (sector + 1) % 4)
            << dy << "," << dx;
      }
    }
  }
}

TEST(VoteFieldTest, Deterministic) {
  for (const auto& fc : PublishedFields()) {
    const VoteField a(fc.config);
    const VoteField b(fc.config);
    for (int r = 1; r <= a.region_count(); ++r) {
      ASSERT_TRUE(std::ranges::equal(a.offsets(r), b.offsets(r)));
    }
  }
}

TEST(VoteFieldTest, MaskModes) {
  const VoteField field(Config(4, {2, 8, 16, 32, 64}));
  const auto only_center = MaskRings(field, MaskMode::kOnlyCenter);
  EXPECT_EQ(only_center.config().masked_regions.size(), 16u);
  EXPECT_FALSE(only_center.is_masked(1));
  EXPECT_EQ(MaskRings(field, MaskMode::kNoCenter).config().masked_regions,
            std::set<int>{1});
  const auto only_context = MaskRings(field, MaskMode::kOnlyContext);
  EXPECT_EQ(only_context.config().masked_regions, (std::set<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(field.region_count() - static_cast<int>(only_context.config().masked_regions.size()), 12);
  EXPECT_THROW(MaskRegions(field, {18}), ConfigError);
  EXPECT_THROW(MaskRegions(field, {0}), ConfigError);
  EXPECT_EQ(ParseMaskMode("no_center"), MaskMode::kNoCenter);
  EXPECT_EQ(ParseMaskMode("bogus"), std::nullopt);
}

TEST(FieldJsonTest, RoundTrip) {
  const VoteField field = MaskRings(VoteField(Config(6, {2, 8, 16})), MaskMode::kOnlyCenter);
  const auto doc = FieldToJson(field, MaskMode::kOnlyCenter);
  EXPECT_EQ(doc.at("region_count"), 13);
  EXPECT_EQ(doc.at("field_size"), 17);
  EXPECT_EQ(doc.at("mask_mode"), "only_center");
  EXPECT_EQ(doc.at("region_map").size(), 17u);
  const VoteField back = FieldFromJson(doc);
  EXPECT_EQ(back.config(), field.config());
}

TEST(FieldJsonTest, RejectsInconsistentRegionMap) {
  auto doc = FieldToJson(VoteField(Config(4, {2, 8, 16})));
  doc["region_map"][8][8] = 3;
  EXPECT_THROW(FieldFromJson(doc), ParseError);
  auto bad_count = FieldToJson(VoteField(Config(4, {2, 8, 16})));
  bad_count["region_count"] = 10;
  EXPECT_THROW(FieldFromJson(bad_count), ParseError);
}

}  // namespace
}  // namespace houghvote
