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

#include "houghvote/voting.h"

#include <algorithm>

#include "houghvote/errors.h"
#include "houghvote/parallel.h"

namespace houghvote {

namespace {

void CheckEvidence(const EvidenceTensor& evidence, const VoteField& field) {
  if (evidence.dim(2) != field.region_count()) {
    throw ShapeError("evidence has " + std::to_string(evidence.dim(2)) +
                     " region channels, field has " +
                     std::to_string(field.region_count()));
  }
  if (!evidence.AllFinite()) {
    throw ValidationError("evidence contains non-finite values");
  }
}

// Region r's channel as a contiguous H×W plane.
std::vector<double> ExtractPlane(const EvidenceTensor& evidence, int region) {
  const int height = evidence.dim(0);
  const int width = evidence.dim(1);
  const int regions = evidence.dim(2);
  std::vector<double> plane(static_cast<std::size_t>(height) * width);
  const double* src = evidence.data() + (region - 1);
  for (std::size_t p = 0; p < plane.size(); ++p) {
    plane[p] = src[p * static_cast<std::size_t>(regions)];
  }
  return plane;
}

// Rows/cols y such that y - shift stays inside [0, extent).
struct Span1d {
  int begin;
  int end;
};
Span1d ShiftedRange(int extent, int shift) {
  return {std::max(0, shift), std::min(extent, extent + shift)};
}

}  // namespace

VoteMode ParseVoteMode(const std::string& name) {
  if (name == "scatter") return VoteMode::kScatter;
  if (name == "gather") return VoteMode::kGather;
  throw ConfigError("unknown vote mode '" + name + "'");
}

PresenceMap AggregateScatter(const EvidenceTensor& evidence,
                             const VoteField& field) {
  CheckEvidence(evidence, field);
  const int height = evidence.dim(0);
  const int width = evidence.dim(1);
  const int regions = evidence.dim(2);
  PresenceMap out({height, width});
  double* dst = out.data();

  // Each region as horizontal runs [dx_begin, dx_end) of window row dy, so
  // off-map targets can be clipped per run instead of per offset.
  struct Run {
    int dy;
    int dx_begin;
    int dx_end;
  };
  std::vector<std::vector<Run>> runs(static_cast<std::size_t>(regions));
  for (int r = 1; r <= regions; ++r) {
    auto& list = runs[static_cast<std::size_t>(r - 1)];
    for (const Offset& delta : field.offsets(r)) {
      if (!list.empty() && list.back().dy == delta.dy &&
          list.back().dx_end == delta.dx) {
        ++list.back().dx_end;
      } else {
        list.push_back({delta.dy, delta.dx, delta.dx + 1});
      }
    }
  }

  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      for (int r = 1; r <= regions; ++r) {
        if (field.is_masked(r)) continue;
        const double vote =
            evidence(i, j, r - 1) / static_cast<double>(field.region_size(r));
        if (vote == 0.0) continue;
        for (const Run& run : runs[static_cast<std::size_t>(r - 1)]) {
          const int y = i + run.dy;
          if (y < 0 || y >= height) continue;
          const int x_begin = std::max(0, j + run.dx_begin);
          const int x_end = std::min(width, j + run.dx_end);
          double* row = dst + static_cast<std::size_t>(y) * width;
          for (int x = x_begin; x < x_end; ++x) row[x] += vote;
        }
      }
    }
  }
  return out;
}

PresenceMap AggregateGather(const EvidenceTensor& evidence,
                            const VoteField& field) {
  CheckEvidence(evidence, field);
  const int height = evidence.dim(0);
  const int width = evidence.dim(1);
  const int regions = evidence.dim(2);
  PresenceMap out({height, width});

  std::vector<std::vector<double>> planes(static_cast<std::size_t>(regions));
  for (int r = 1; r <= regions; ++r) {
    if (!field.is_masked(r)) {
      planes[static_cast<std::size_t>(r - 1)] = ExtractPlane(evidence, r);
    }
  }

  // O(y, x) = sum over window cells (dy, dx) in region r of
  //           E(y - dy, x - dx, r) / K_r.
  const int half = field.half_extent();
  double* dst = out.data();
  for (int row = 0; row < field.field_size(); ++row) {
    const int dy = row - half;
    const Span1d ys = ShiftedRange(height, dy);
    for (int col = 0; col < field.field_size(); ++col) {
      const int r = field.region_at(row, col);
      if (r == VoteField::kOutside || field.is_masked(r)) continue;
      const int dx = col - half;
      const Span1d xs = ShiftedRange(width, dx);
      if (ys.begin >= ys.end || xs.begin >= xs.end) continue;
      const double weight = 1.0 / static_cast<double>(field.region_size(r));
      const double* plane = planes[static_cast<std::size_t>(r - 1)].data();
      for (int y = ys.begin; y < ys.end; ++y) {
        double* o = dst + static_cast<std::size_t>(y) * width;
        const double* e = plane + static_cast<std::size_t>(y - dy) * width;
        for (int x = xs.begin; x < xs.end; ++x) o[x] += weight * e[x - dx];
      }
    }
  }
  return out;
}

PresenceMap Aggregate(const EvidenceTensor& evidence, const VoteField& field,
                      VoteMode mode) {
  return mode == VoteMode::kScatter ? AggregateScatter(evidence, field)
                                    : AggregateGather(evidence, field);
}

EvidenceTensor AggregateAdjoint(const PresenceMap& grad,
                                const VoteField& field) {
  if (!grad.AllFinite()) {
    throw ValidationError("gradient contains non-finite values");
  }
  const int height = grad.dim(0);
  const int width = grad.dim(1);
  const int regions = field.region_count();
  const std::size_t pixels = static_cast<std::size_t>(height) * width;

  // Per-region planes: A_r(i, j) = sum_k G((i, j) + delta_r(k)).
  std::vector<std::vector<double>> planes(static_cast<std::size_t>(regions));
  for (int r = 1; r <= regions; ++r) {
    if (!field.is_masked(r)) {
      planes[static_cast<std::size_t>(r - 1)].assign(pixels, 0.0);
    }
  }
  const int half = field.half_extent();
  const double* src = grad.data();
  for (int row = 0; row < field.field_size(); ++row) {
    const int dy = row - half;
    const Span1d is = ShiftedRange(height, -dy);
    for (int col = 0; col < field.field_size(); ++col) {
      const int r = field.region_at(row, col);
      if (r == VoteField::kOutside || field.is_masked(r)) continue;
      const int dx = col - half;
      const Span1d js = ShiftedRange(width, -dx);
      double* plane = planes[static_cast<std::size_t>(r - 1)].data();
      for (int i = is.begin; i < is.end; ++i) {
        double* a = plane + static_cast<std::size_t>(i) * width;
        const double* g = src + static_cast<std::size_t>(i + dy) * width;
        for (int j = js.begin; j < js.end; ++j) a[j] += g[j + dx];
      }
    }
  }

  EvidenceTensor out({height, width, regions});
  double* dst = out.data();
  for (int r = 1; r <= regions; ++r) {
    if (field.is_masked(r)) continue;
    const double size = static_cast<double>(field.region_size(r));
    const auto& plane = planes[static_cast<std::size_t>(r - 1)];
    for (std::size_t p = 0; p < pixels; ++p) {
      dst[p * static_cast<std::size_t>(regions) + (r - 1)] = plane[p] / size;
    }
  }
  return out;
}

std::vector<PresenceMap> AggregateMulticlass(
    std::span<const EvidenceTensor> evidence, const VoteField& field,
    VoteMode mode, int workers) {
  for (const auto& e : evidence) {
    if (e.shape() != evidence.front().shape()) {
      throw ShapeError("class evidence tensors have different shapes");
    }
  }
  std::vector<PresenceMap> out(evidence.size());
  ParallelFor(evidence.size(), workers, [&](std::size_t c) {
    out[c] = Aggregate(evidence[c], field, mode);
  });
  return out;
}

}  // namespace houghvote
