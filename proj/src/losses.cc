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

#include "houghvote/losses.h"

#include <algorithm>
#include <cmath>

#include "houghvote/errors.h"

namespace houghvote {

double GaussianRadius(double height, double width, double min_overlap) {
  // Three cases: both corners inside, both outside, one of each.
  const double b1 = height + width;
  const double c1 = width * height * (1 - min_overlap) / (1 + min_overlap);
  const double r1 = (b1 + std::sqrt(b1 * b1 - 4 * c1)) / 2;

  const double a2 = 4;
  const double b2 = 2 * (height + width);
  const double c2 = (1 - min_overlap) * width * height;
  const double r2 = (b2 + std::sqrt(b2 * b2 - 4 * a2 * c2)) / 2;

  const double a3 = 4 * min_overlap;
  const double b3 = -2 * min_overlap * (height + width);
  const double c3 = (min_overlap - 1) * width * height;
  const double r3 = (b3 + std::sqrt(b3 * b3 - 4 * a3 * c3)) / 2;

  return std::min({r1, r2, r3});
}

void DrawGaussian(HeatmapStack& heatmap, int channel, GridPoint center,
                  int radius) {
  const int height = heatmap.dim(1);
  const int width = heatmap.dim(2);
  const double sigma = (2.0 * radius + 1.0) / 6.0;
  const double denom = 2.0 * sigma * sigma;
  for (int dy = -radius; dy <= radius; ++dy) {
    const int y = center.row + dy;
    if (y < 0 || y >= height) continue;
    for (int dx = -radius; dx <= radius; ++dx) {
      const int x = center.col + dx;
      if (x < 0 || x >= width) continue;
      const double g = std::exp(-(dx * dx + dy * dy) / denom);
      double& cell = heatmap(channel, y, x);
      cell = std::max(cell, g);
    }
  }
}

RenderedTargets RenderTargets(std::span<const ObjectAnnotation> objects,
                              int classes, int height, int width,
                              int stride) {
  if (stride < 1) throw ConfigError("stride must be >= 1");
  RenderedTargets out;
  out.heatmap = HeatmapStack({classes, height, width});
  for (const auto& object : objects) {
    if (object.class_index < 0 || object.class_index >= classes) {
      throw ValidationError("object class " +
                            std::to_string(object.class_index) +
                            " outside the heatmap stack");
    }
    const Box& b = object.box;
    if (!(b.width() > 0.0) || !(b.height() > 0.0)) {
      ++out.skipped_degenerate;
      continue;
    }
    const double cx = (b.x1 + b.x2) / 2.0 / stride;
    const double cy = (b.y1 + b.y2) / 2.0 / stride;
    const GridPoint pixel{std::clamp(static_cast<int>(std::floor(cy)), 0, height - 1),
                          std::clamp(static_cast<int>(std::floor(cx)), 0, width - 1)};
    const double h = b.height() / stride;
    const double w = b.width() / stride;

    const int radius = std::max(
        0, static_cast<int>(GaussianRadius(std::ceil(h), std::ceil(w))));
    DrawGaussian(out.heatmap, object.class_index, pixel, radius);

    out.regression.positions.push_back(pixel);
    out.regression.offsets.push_back({cy - pixel.row, cx - pixel.col});
    out.regression.sizes.push_back({h, w});
    out.regression.classes.push_back(object.class_index);
  }
  return out;
}

HeatmapStack ClampProbabilities(HeatmapStack pred, double epsilon) {
  for (double& p : pred.values()) p = std::clamp(p, epsilon, 1.0 - epsilon);
  return pred;
}

LossValue FocalLoss(const HeatmapStack& pred, const HeatmapStack& target) {
  if (pred.shape() != target.shape()) {
    throw ShapeError("focal loss: prediction and target shapes differ");
  }
  const auto p = pred.values();
  const auto y = target.values();
  std::size_t positives = 0;
  for (double t : y) {
    if (t == 1.0) ++positives;
  }
  const double norm = static_cast<double>(std::max<std::size_t>(positives, 1));

  LossValue out;
  out.gradient.assign(p.size(), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double pk = p[k];
    if (!(pk > 0.0 && pk < 1.0)) {
      throw ValidationError("focal loss: predictions must lie in (0, 1)");
    }
    if (y[k] == 1.0) {
      // -(1 - p)^a log p
      const double q = 1.0 - pk;
      sum -= std::pow(q, kFocalAlpha) * std::log(pk);
      out.gradient[k] = kFocalAlpha * std::pow(q, kFocalAlpha - 1) * std::log(pk) -
                        std::pow(q, kFocalAlpha) / pk;
    } else {
      // -(1 - y)^b p^a log(1 - p)
      const double damp = std::pow(1.0 - y[k], kFocalBeta);
      const double log_q = std::log1p(-pk);
      sum -= damp * std::pow(pk, kFocalAlpha) * log_q;
      out.gradient[k] =
          -damp * (kFocalAlpha * std::pow(pk, kFocalAlpha - 1) * log_q -
                   std::pow(pk, kFocalAlpha) / (1.0 - pk));
    }
  }
  out.value = sum / norm;
  for (double& g : out.gradient) g /= norm;
  return out;
}

LossValue WeightedL1Loss(std::span<const Vec2> pred,
                         std::span<const Vec2> target, double weight) {
  if (pred.size() != target.size()) {
    throw ShapeError("L1 loss: prediction and target counts differ");
  }
  LossValue out;
  out.gradient.assign(2 * pred.size(), 0.0);
  if (pred.empty()) return out;
  const double components = 2.0 * static_cast<double>(pred.size());
  double sum = 0.0;
  auto sign = [](double d) { return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0); };
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double ey = pred[i].y - target[i].y;
    const double ex = pred[i].x - target[i].x;
    sum += std::abs(ey) + std::abs(ex);
    out.gradient[2 * i] = weight * sign(ey) / components;
    out.gradient[2 * i + 1] = weight * sign(ex) / components;
  }
  out.value = weight * (sum / components);
  return out;
}

std::vector<Vec2> GatherPairs(const PairMap& map,
                              std::span<const GridPoint> positions) {
  if (map.dim(2) != 2) throw ShapeError("pair map needs 2 channels");
  std::vector<Vec2> out;
  out.reserve(positions.size());
  for (const auto& pos : positions) {
    if (pos.row < 0 || pos.row >= map.dim(0) || pos.col < 0 ||
        pos.col >= map.dim(1)) {
      throw ShapeError("position outside the pair map");
    }
    out.push_back({map(pos.row, pos.col, 0), map(pos.row, pos.col, 1)});
  }
  return out;
}

}  // namespace houghvote
