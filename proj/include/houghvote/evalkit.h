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

// Box AP in the COCO style: greedy score-ordered matching, 101-point
// interpolated precision, averaged over IoU thresholds and classes.

#ifndef HOUGHVOTE_EVALKIT_H_
#define HOUGHVOTE_EVALKIT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "houghvote/box.h"
#include "houghvote/dataset.h"
#include "json.hpp"

namespace houghvote {

// One line of a COCO results file.
struct DetectionRecord {
  ImageId image_id = 0;
  int category_id = 0;
  Box box;
  double score = 0.0;
};

nlohmann::json DetectionToJson(const DetectionRecord& record);
DetectionRecord DetectionFromJson(const nlohmann::json& line);
void WriteDetectionsJsonl(const std::string& path,
                          std::span<const DetectionRecord> records);
std::vector<DetectionRecord> ReadDetectionsJsonl(const std::string& path);

struct EvalConfig {
  std::vector<double> iou_thresholds = DefaultIouThresholds();
  int max_detections = 100;

  // 0.50, 0.55, ..., 0.95
  static std::vector<double> DefaultIouThresholds();
  void Validate() const;
};

// Undefined entries (no ground truth in scope) are reported as -1.
struct ApReport {
  double ap = -1.0;
  double ap50 = -1.0;
  double ap75 = -1.0;
  double ap_small = -1.0;
  double ap_medium = -1.0;
  double ap_large = -1.0;
  std::vector<double> per_threshold;  // all-area AP at each IoU threshold
};

// Detections must reference images and categories of `ground_truth`.
// Crowd annotations are ignored regions: matching them neither helps nor
// hurts.
ApReport MatchAndScore(std::span<const DetectionRecord> detections,
                       const AnnotationSet& ground_truth,
                       const EvalConfig& config = {});

nlohmann::json ReportToJson(const ApReport& report);

}  // namespace houghvote

#endif  // HOUGHVOTE_EVALKIT_H_
