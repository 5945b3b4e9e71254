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

#include "houghvote/decoder.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "houghvote/errors.h"

namespace houghvote {

namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

bool PeakBefore(const Peak& a, const Peak& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.class_id != b.class_id) return a.class_id < b.class_id;
  if (a.row != b.row) return a.row < b.row;
  return a.col < b.col;
}

bool IsLocalMax(const PresenceMap& map, int row, int col) {
  const double v = map(row, col);
  const int height = map.dim(0);
  const int width = map.dim(1);
  for (int y = std::max(0, row - 1); y <= std::min(height - 1, row + 1); ++y) {
    for (int x = std::max(0, col - 1); x <= std::min(width - 1, col + 1); ++x) {
      if (map(y, x) > v) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Peak> ExtractPeaks(std::span<const PresenceMap> maps,
                               const PeakOptions& options) {
  if (maps.empty()) throw ValidationError("no presence maps to decode");
  if (options.top_k < 1) throw ConfigError("top_k must be >= 1");
  for (const auto& map : maps) {
    if (map.shape() != maps.front().shape()) {
      throw ShapeError("presence maps have different shapes");
    }
    if (!map.AllFinite()) {
      throw ValidationError("presence map contains non-finite values");
    }
  }

  std::vector<Peak> peaks;
  for (std::size_t c = 0; c < maps.size(); ++c) {
    const auto& map = maps[c];
    for (int row = 0; row < map.dim(0); ++row) {
      for (int col = 0; col < map.dim(1); ++col) {
        if (!IsLocalMax(map, row, col)) continue;
        const double raw = map(row, col);
        peaks.push_back({static_cast<int>(c), row, col,
                         options.apply_sigmoid ? Sigmoid(raw) : raw});
      }
    }
  }
  const std::size_t keep =
      std::min(peaks.size(), static_cast<std::size_t>(options.top_k));
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<long>(keep),
                    peaks.end(), PeakBefore);
  peaks.resize(keep);
  return peaks;
}

std::vector<Detection> DecodeBoxes(std::span<const Peak> peaks,
                                   const PairMap& offsets,
                                   const PairMap& sizes,
                                   const DecodeOptions& options,
                                   DecodeDiagnostics* diagnostics) {
  if (offsets.dim(2) != 2 || sizes.dim(2) != 2) {
    throw ShapeError("offset and size maps need exactly 2 channels");
  }
  if (offsets.shape() != sizes.shape()) {
    throw ShapeError("offset and size maps have different shapes");
  }
  if (options.stride < 1) throw ConfigError("stride must be >= 1");
  const int height = offsets.dim(0);
  const int width = offsets.dim(1);
  const double stride = options.stride;
  const double max_x =
      options.image_width > 0.0 ? options.image_width : width * stride;
  const double max_y =
      options.image_height > 0.0 ? options.image_height : height * stride;

  std::vector<Detection> out;
  out.reserve(peaks.size());
  for (const Peak& peak : peaks) {
    if (peak.row < 0 || peak.row >= height || peak.col < 0 ||
        peak.col >= width) {
      throw ShapeError("peak outside the offset/size maps");
    }
    Detection det;
    det.class_id = peak.class_id;
    det.score = peak.score;
    det.row = peak.row;
    det.col = peak.col;
    det.offset_y = offsets(peak.row, peak.col, 0);
    det.offset_x = offsets(peak.row, peak.col, 1);
    det.height = sizes(peak.row, peak.col, 0);
    det.width = sizes(peak.row, peak.col, 1);
    if (det.height < 0.0 || det.width < 0.0) {
      if (diagnostics != nullptr) ++diagnostics->negative_sizes;
      det.height = std::max(det.height, 0.0);
      det.width = std::max(det.width, 0.0);
    }
    const double cx = (peak.col + det.offset_x) * stride;
    const double cy = (peak.row + det.offset_y) * stride;
    const double half_w = det.width * stride / 2.0;
    const double half_h = det.height * stride / 2.0;
    det.box.x1 = std::clamp(cx - half_w, 0.0, max_x);
    det.box.y1 = std::clamp(cy - half_h, 0.0, max_y);
    det.box.x2 = std::clamp(cx + half_w, 0.0, max_x);
    det.box.y2 = std::clamp(cy + half_h, 0.0, max_y);
    out.push_back(det);
  }
  return out;
}

std::vector<Detection> SoftNms(std::vector<Detection> detections,
                               const SoftNmsOptions& options) {
  if (!(options.sigma > 0.0)) throw ConfigError("soft-nms sigma must be > 0");

  std::map<int, std::vector<Detection>> by_class;
  for (auto& det : detections) {
    if (!std::isfinite(det.score)) {
      throw ValidationError("detection score is not finite");
    }
    if (det.score >= options.score_floor) {
      by_class[det.class_id].push_back(det);
    }
  }

  std::vector<Detection> kept;
  for (auto& [class_id, remaining] : by_class) {
    while (!remaining.empty()) {
      // First maximum wins so equal scores keep their input order.
      auto best = std::max_element(
          remaining.begin(), remaining.end(),
          [](const Detection& a, const Detection& b) {
            return a.score < b.score;
          });
      const Detection selected = *best;
      remaining.erase(best);
      kept.push_back(selected);
      for (auto& other : remaining) {
        const double overlap = Iou(selected.box, other.box);
        other.score *= std::exp(-(overlap * overlap) / options.sigma);
      }
      std::erase_if(remaining, [&](const Detection& d) {
        return d.score < options.score_floor;
      });
    }
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Detection& a, const Detection& b) {
                     return a.score > b.score;
                   });
  return kept;
}

std::vector<Detection> MergeMultiscale(std::span<const ScaleResult> results,
                                       int top_k,
                                       const SoftNmsOptions& options) {
  std::vector<Detection> all;
  for (const auto& result : results) {
    all.insert(all.end(), result.detections.begin(), result.detections.end());
  }
  auto merged = SoftNms(std::move(all), options);
  if (top_k >= 0 && merged.size() > static_cast<std::size_t>(top_k)) {
    merged.resize(static_cast<std::size_t>(top_k));
  }
  return merged;
}

std::vector<Detection> RescaleToOriginal(std::vector<Detection> detections,
                                         double scale, bool flip,
                                         double image_width) {
  if (!(scale > 0.0)) throw ConfigError("scale must be > 0");
  for (auto& det : detections) {
    Box b{det.box.x1 / scale, det.box.y1 / scale, det.box.x2 / scale,
          det.box.y2 / scale};
    if (flip) {
      const double x1 = image_width - b.x2;
      const double x2 = image_width - b.x1;
      b.x1 = x1;
      b.x2 = x2;
    }
    det.box = b;
  }
  return detections;
}

}  // namespace houghvote
