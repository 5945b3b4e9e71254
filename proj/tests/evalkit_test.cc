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

#include <cmath>
#include <random>

#include "houghvote/errors.h"
#include "houghvote/evalkit.h"
#include "support/test_support.h"

namespace houghvote {
namespace {

AnnotationSet Gt(std::vector<std::pair<int, Box>> objects, int categories = 1) {
  AnnotationSet set;
  set.images.push_back({1, 640, 480, "a.jpg"});
  for (int c = 1; c <= categories; ++c) set.categories.push_back({c, "c"});
  std::int64_t id = 1;
  for (const auto& [cat, box] : objects) {
    Annotation a;
    a.id = id++;
    a.image_id = 1;
    a.category_id = cat;
    a.box = box;
    a.area = box.area();
    set.annotations.push_back(a);
  }
  return set;
}

EvalConfig SingleThreshold(double t) {
  EvalConfig c;
  c.iou_thresholds = {t};
  return c;
}

TEST(EvalkitTest, PerfectDetection) {
  const auto gt = Gt({{1, {10, 10, 60, 60}}});
  const std::vector<DetectionRecord> dets = {{1, 1, {10, 10, 60, 60}, 0.9}};
  const auto r = MatchAndScore(dets, gt);
  EXPECT_EQ(r.ap, 1.0);
  EXPECT_EQ(r.ap50, 1.0);
  EXPECT_EQ(r.ap75, 1.0);
  for (double v : r.per_threshold) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(r.ap_medium, 1.0);
  EXPECT_EQ(r.ap_small, -1.0);
  EXPECT_EQ(r.ap_large, -1.0);
}

TEST(EvalkitTest, NoDetections) {
  const auto gt = Gt({{1, {10, 10, 60, 60}}});
  EXPECT_EQ(MatchAndScore({}, gt).ap, 0.0);
}

TEST(EvalkitTest, TwoGroundTruthsOnePerfectDetection) {
  const auto gt = Gt({{1, {10, 10, 60, 60}}, {1, {200, 200, 260, 260}}});
  const std::vector<DetectionRecord> dets = {{1, 1, {10, 10, 60, 60}, 0.9}};
  // Recall reaches 0.5 at precision 1: recall points 0.00..0.50 count, so
  // 51 of 101 interpolation samples are 1.
  EXPECT_DOUBLE_EQ(MatchAndScore(dets, gt, SingleThreshold(0.5)).ap, 51.0 / 101.0);
}

TEST(EvalkitTest, ThresholdDependence) {
  const auto gt = Gt({{1, {0, 0, 100, 100}}});
  // IoU 0.8: matched at 0.50..0.80, missed at 0.85..0.95.
  const std::vector<DetectionRecord> dets = {{1, 1, {0, 0, 100, 80}, 0.9}};
  const auto r = MatchAndScore(dets, gt);
  EXPECT_EQ(r.ap50, 1.0);
  EXPECT_EQ(r.ap75, 1.0);
  EXPECT_DOUBLE_EQ(r.ap, 0.7);
}

TEST(EvalkitTest, ClassesWithoutGroundTruthExcluded) {
  const auto gt = Gt({{1, {10, 10, 60, 60}}}, 3);
  const std::vector<DetectionRecord> dets = {{1, 1, {10, 10, 60, 60}, 0.9},
                                             {1, 2, {100, 100, 120, 120}, 0.8}};
  EXPECT_EQ(MatchAndScore(dets, gt).ap, 1.0);
}

TEST(EvalkitTest, CrowdRegionsAreIgnored) {
  auto gt = Gt({{1, {10, 10, 60, 60}}, {1, {300, 300, 400, 400}}});
  gt.annotations[1].iscrowd = true;
  const std::vector<DetectionRecord> dets = {{1, 1, {10, 10, 60, 60}, 0.9},
                                             {1, 1, {310, 310, 330, 330}, 0.95},
                                             {1, 1, {320, 320, 350, 350}, 0.85}};
  EXPECT_EQ(MatchAndScore(dets, gt).ap, 1.0);
}

TEST(EvalkitTest, SizeStratified) {
  const auto gt = Gt({{1, {0, 0, 20, 20}}, {1, {100, 100, 150, 150}}, {1, {200, 200, 400, 400}}});
  const std::vector<DetectionRecord> dets = {{1, 1, {0, 0, 20, 20}, 0.9},
                                             {1, 1, {200, 200, 400, 400}, 0.8}};
  const auto r = MatchAndScore(dets, gt);
  EXPECT_EQ(r.ap_small, 1.0);
  EXPECT_EQ(r.ap_medium, 0.0);
  EXPECT_EQ(r.ap_large, 1.0);
}

TEST(EvalkitTest, MaxDetectionsPerImage) {
  const auto gt = Gt({{1, {0, 0, 50, 50}}});
  std::vector<DetectionRecord> dets;
  for (int i = 0; i < 5; ++i) dets.push_back({1, 1, {300.0 + i, 300, 350, 350}, 0.9 - 0.01 * i});
  dets.push_back({1, 1, {0, 0, 50, 50}, 0.1});
  EvalConfig config;
  config.max_detections = 5;
  EXPECT_EQ(MatchAndScore(dets, gt, config).ap, 0.0);
  config.max_detections = 6;
  EXPECT_GT(MatchAndScore(dets, gt, config).ap, 0.0);
}

class EvalkitPropertyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 400.0);
    std::uniform_real_distribution<double> side(10.0, 120.0);
    std::uniform_real_distribution<double> jitter(-8.0, 8.0);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::vector<std::pair<int, Box>> objects;
    for (int k = 0; k < 30; ++k) {
      const double x = u(rng);
      const double y = u(rng);
      objects.push_back({1 + k % 3, {x, y, x + side(rng), y + side(rng)}});
    }
    gt_ = Gt(objects, 3);
    for (const auto& [cat, b] : objects) {
      if (score(rng) < 0.8) {
        dets_.push_back({1, cat, {b.x1 + jitter(rng), b.y1 + jitter(rng), b.x2 + jitter(rng), b.y2 + jitter(rng)}, score(rng)});
      }
      if (score(rng) < 0.3) dets_.push_back({1, cat, {u(rng), u(rng), 450, 450}, score(rng)});
    }
  }
  AnnotationSet gt_;
  std::vector<DetectionRecord> dets_;
};

TEST_F(EvalkitPropertyTest, MonotoneScoreTransformInvariance) {
  const auto base = MatchAndScore(dets_, gt_);
  auto transformed = dets_;
  for (auto& d : transformed) d.score = std::exp(5 * d.score) - 3;
  const auto r = MatchAndScore(transformed, gt_);
  EXPECT_EQ(r.ap, base.ap);
  EXPECT_EQ(r.per_threshold, base.per_threshold);
  EXPECT_GT(base.ap, 0.0);
  EXPECT_LT(base.ap, 1.0);
}

TEST_F(EvalkitPropertyTest, DuplicatesNeverIncreaseAp) {
  const auto base = MatchAndScore(dets_, gt_);
  for (std::size_t k = 0; k < dets_.size(); k += 3) {
    auto with_dup = dets_;
    auto dup = dets_[k];
    dup.score = dets_[k].score * 0.999;
    with_dup.push_back(dup);
    EXPECT_LE(MatchAndScore(with_dup, gt_).ap, base.ap + 1e-12);
  }
}

TEST(EvalkitTest, Errors) {
  const auto gt = Gt({{1, {10, 10, 60, 60}}});
  const std::vector<DetectionRecord> unknown_image = {{2, 1, {0, 0, 1, 1}, 0.5}};
  EXPECT_THROW(MatchAndScore(unknown_image, gt), ValidationError);
  const std::vector<DetectionRecord> unknown_cat = {{1, 4, {0, 0, 1, 1}, 0.5}};
  EXPECT_THROW(MatchAndScore(unknown_cat, gt), ValidationError);
  EvalConfig bad;
  bad.iou_thresholds = {0.7, 0.5};
  EXPECT_THROW(MatchAndScore({}, gt, bad), ConfigError);
}

TEST(EvalkitTest, JsonlRoundTrip) {
  const std::vector<DetectionRecord> dets = {{3, 2, {1.5, 2.5, 10.25, 20.75}, 0.625},
                                             {4, 1, {0, 0, 5, 5}, 0.125}};
  const auto path = testing::TempPath("dets.jsonl");
  WriteDetectionsJsonl(path, dets);
  const auto back = ReadDetectionsJsonl(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].box, dets[0].box);
  EXPECT_EQ(back[1].image_id, 4);
  EXPECT_EQ(back[0].score, 0.625);
  const auto json = DetectionToJson(dets[0]);
  EXPECT_EQ(json.at("bbox")[2], 10.25 - 1.5);
}

TEST(EvalkitTest, ReportJsonKeys) {
  const auto doc = ReportToJson(ApReport{});
  for (const char* key : {"AP", "AP50", "AP75", "APS", "APM", "APL"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
}

}  // namespace
}  // namespace houghvote
