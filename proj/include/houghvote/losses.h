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

// Training objectives of the three prediction branches, with analytic
// gradients, and CornerNet-style ground-truth rendering.

#ifndef HOUGHVOTE_LOSSES_H_
#define HOUGHVOTE_LOSSES_H_

#include <span>
#include <vector>

#include "houghvote/box.h"
#include "houghvote/tensor.h"

namespace houghvote {

inline constexpr double kFocalAlpha = 2.0;
inline constexpr double kFocalBeta = 4.0;
inline constexpr double kProbabilityEpsilon = 1e-7;
inline constexpr double kSizeLossWeight = 0.1;
inline constexpr double kGaussianMinOverlap = 0.7;

struct Vec2 {
  double y = 0.0;  // or h
  double x = 0.0;  // or w
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct GridPoint {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct ObjectAnnotation {
  int class_index = 0;  // channel in the heatmap stack
  Box box;              // input-image pixels
};

// Per-object regression targets, index-aligned.
struct RegressionTargets {
  std::vector<GridPoint> positions;
  std::vector<Vec2> offsets;  // (dy, dx) in [0, 1)
  std::vector<Vec2> sizes;    // (h, w) in map units
  std::vector<int> classes;
};

struct RenderedTargets {
  HeatmapStack heatmap;  // C×H×W, values in [0, 1]
  RegressionTargets regression;
  int skipped_degenerate = 0;
};

// CornerNet radius: the largest r such that a box whose corners are jittered
// by r keeps IoU >= min_overlap with the original.
double GaussianRadius(double height, double width,
                      double min_overlap = kGaussianMinOverlap);

// Splats exp(-(dx^2 + dy^2) / (2 sigma^2)), sigma = (2r + 1) / 6, onto
// plane `channel` with element-wise max.
void DrawGaussian(HeatmapStack& heatmap, int channel, GridPoint center,
                  int radius);

// Zero-area boxes are skipped and counted.
RenderedTargets RenderTargets(std::span<const ObjectAnnotation> objects,
                              int classes, int height, int width,
                              int stride = 4);

struct LossValue {
  double value = 0.0;
  std::vector<double> gradient;  // same layout as the prediction
};

// Modified focal loss over C×H×W probabilities. Predictions must lie in
// (0, 1); use ClampProbabilities first. Normalized by the number of
// exactly-1 target pixels, floored at 1.
LossValue FocalLoss(const HeatmapStack& pred, const HeatmapStack& target);

HeatmapStack ClampProbabilities(HeatmapStack pred,
                                double epsilon = kProbabilityEpsilon);

// Mean absolute error over the 2N components, scaled by `weight`. The
// subgradient is 0 where prediction equals target. N = 0 gives 0.
LossValue WeightedL1Loss(std::span<const Vec2> pred,
                         std::span<const Vec2> target, double weight);

inline LossValue OffsetLoss(std::span<const Vec2> pred,
                            std::span<const Vec2> target) {
  return WeightedL1Loss(pred, target, 1.0);
}

inline LossValue SizeLoss(std::span<const Vec2> pred,
                          std::span<const Vec2> target,
                          double weight = kSizeLossWeight) {
  return WeightedL1Loss(pred, target, weight);
}

// Reads a pair map at the given positions.
std::vector<Vec2> GatherPairs(const PairMap& map,
                              std::span<const GridPoint> positions);

struct LossComponents {
  double focal = 0.0;
  double offset = 0.0;
  double size = 0.0;  // already weighted
};

inline double TotalLoss(const LossComponents& c) {
  return c.focal + c.offset + c.size;
}

}  // namespace houghvote

#endif  // HOUGHVOTE_LOSSES_H_
