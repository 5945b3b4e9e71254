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

// Inference decoding: presence maps -> peaks -> boxes -> Soft-NMS.
//
// Pair maps use channel 0 for the vertical component and channel 1 for the
// horizontal one: offsets are (dy, dx) and sizes are (h, w), both in
// output-map units.

#ifndef HOUGHVOTE_DECODER_H_
#define HOUGHVOTE_DECODER_H_

#include <array>
#include <span>
#include <vector>

#include "houghvote/box.h"
#include "houghvote/tensor.h"

namespace houghvote {

inline constexpr int kDefaultStride = 4;
inline constexpr int kDefaultTopK = 100;
inline constexpr std::array<double, 5> kMultiScaleFactors = {0.6, 1.0, 1.2,
                                                             1.5, 1.8};

struct Peak {
  int class_id = 0;
  int row = 0;
  int col = 0;
  double score = 0.0;
  friend bool operator==(const Peak&, const Peak&) = default;
};

struct PeakOptions {
  int top_k = kDefaultTopK;
  // Treat map values as logits and rank by their sigmoid.
  bool apply_sigmoid = false;
};

// A pixel is a peak when it is >= every neighbor in its (border-clipped)
// 3×3 window. Peaks of all classes are ranked by score, ties broken by
// (class, row, col), and the first top_k returned.
std::vector<Peak> ExtractPeaks(std::span<const PresenceMap> maps,
                               const PeakOptions& options = {});

struct Detection {
  int class_id = 0;
  double score = 0.0;
  int row = 0;
  int col = 0;
  double offset_y = 0.0;
  double offset_x = 0.0;
  double height = 0.0;  // map units
  double width = 0.0;   // map units
  Box box;              // input-image pixels
};

struct DecodeOptions {
  int stride = kDefaultStride;
  // Clamp bounds in image pixels; <= 0 means map extent × stride.
  double image_width = 0.0;
  double image_height = 0.0;
};

struct DecodeDiagnostics {
  int negative_sizes = 0;
};

std::vector<Detection> DecodeBoxes(std::span<const Peak> peaks,
                                   const PairMap& offsets,
                                   const PairMap& sizes,
                                   const DecodeOptions& options = {},
                                   DecodeDiagnostics* diagnostics = nullptr);

struct SoftNmsOptions {
  double sigma = 0.5;
  double score_floor = 0.001;
};

// Gaussian Soft-NMS, applied independently per class. Each round keeps the
// best remaining detection and multiplies every other remaining score of
// that class by exp(-IoU^2 / sigma). Scores below the floor are dropped.
// Output is sorted by final score, descending.
std::vector<Detection> SoftNms(std::vector<Detection> detections,
                               const SoftNmsOptions& options = {});

struct ScaleResult {
  double scale = 1.0;
  std::vector<Detection> detections;  // already in original-image pixels
};

std::vector<Detection> MergeMultiscale(std::span<const ScaleResult> results,
                                       int top_k = kDefaultTopK,
                                       const SoftNmsOptions& options = {});

// Maps boxes decoded on a resized (and optionally mirrored) input back to
// the original frame: divide by scale, then mirror x about image_width.
std::vector<Detection> RescaleToOriginal(std::vector<Detection> detections,
                                         double scale, bool flip,
                                         double image_width);

}  // namespace houghvote

#endif  // HOUGHVOTE_DECODER_H_
