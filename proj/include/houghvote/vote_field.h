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

// Log-polar vote field geometry.
//
// A field is a square window of pixel offsets centered on a voter. It is
// split into a center disk and (rings - 1) annuli, each annulus cut into
// `angle_bins` equal sectors. Ring extents are full diameters in pixels, so
// extents {2, 8, 16} give half-extents {1, 4, 8} and a 17×17 window.
//
// Region ids are 1-based: id 1 is the center disk, then ring by ring from
// the inside out, and within a ring counter-clockwise starting at the sector
// that contains 0° (the positive x axis). Angles use image "up" as 90°, i.e.
// they are computed from (-dy, dx).

#ifndef HOUGHVOTE_VOTE_FIELD_H_
#define HOUGHVOTE_VOTE_FIELD_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace houghvote {

struct Offset {
  int dy = 0;
  int dx = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

struct VoteFieldConfig {
  int angle_bins = 4;
  std::vector<int> ring_extents = {2, 8, 16};
  std::set<int> masked_regions;

  int ring_count() const { return static_cast<int>(ring_extents.size()); }
  int region_count() const { return 1 + (ring_count() - 1) * angle_bins; }
  int field_size() const { return ring_extents.back() + 1; }

  // Throws ConfigError unless the geometry parameters are well formed.
  // Masked region ids are checked against region_count().
  void Validate() const;

  friend bool operator==(const VoteFieldConfig&,
                         const VoteFieldConfig&) = default;
};

enum class MaskMode { kOnlyCenter, kNoCenter, kOnlyContext };

std::optional<MaskMode> ParseMaskMode(const std::string& name);
std::string MaskModeName(MaskMode mode);

// Region containing `offset`, or nullopt when it lies beyond the last ring.
// Does not validate the config; callers that need that call Validate().
std::optional<int> RegionOf(Offset offset, const VoteFieldConfig& config);

// Immutable after construction.
class VoteField {
 public:
  static constexpr int kOutside = -1;

  explicit VoteField(VoteFieldConfig config);

  const VoteFieldConfig& config() const { return config_; }
  int region_count() const { return region_count_; }
  int field_size() const { return field_size_; }
  int half_extent() const { return field_size_ / 2; }

  // Offsets of region `region` (1-based) in row-major window order.
  std::span<const Offset> offsets(int region) const {
    return offsets_[static_cast<std::size_t>(region - 1)];
  }
  int region_size(int region) const {
    return static_cast<int>(offsets_[static_cast<std::size_t>(region - 1)].size());
  }
  bool is_masked(int region) const {
    return config_.masked_regions.count(region) != 0;
  }

  // Region id at window cell (row, col), or kOutside. Row-major over the
  // field_size × field_size window.
  int region_at(int row, int col) const {
    return region_map_[static_cast<std::size_t>(row * field_size_ + col)];
  }
  std::span<const int> region_map() const { return region_map_; }

  // Ring index of a region: 0 for the center disk, k for the k-th annulus.
  int ring_of(int region) const;

  // Same geometry with a different mask set. Throws ConfigError for ids
  // outside 1..R.
  VoteField WithMask(std::set<int> masked_regions) const;

  friend bool operator==(const VoteField& a, const VoteField& b) {
    return a.config_ == b.config_;
  }

 private:
  VoteFieldConfig config_;
  int region_count_ = 0;
  int field_size_ = 0;
  std::vector<std::vector<Offset>> offsets_;
  std::vector<int> region_map_;
};

inline VoteField BuildField(const VoteFieldConfig& config) {
  return VoteField(config);
}

// Masks the regions that implement one of the center/periphery ablations:
// kOnlyCenter keeps region 1 only, kNoCenter drops region 1, kOnlyContext
// drops region 1 and the whole first annulus.
VoteField MaskRings(const VoteField& field, MaskMode mode);
VoteField MaskRegions(const VoteField& field, const std::set<int>& regions);

}  // namespace houghvote

#endif  // HOUGHVOTE_VOTE_FIELD_H_
