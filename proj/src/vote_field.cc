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

#include "houghvote/vote_field.h"

#include <cmath>
#include <numbers>

#include "houghvote/errors.h"

namespace houghvote {

namespace {

// Sector index in [0, angle_bins) of a nonzero offset. Boundaries belong to
// the sector that starts there; the epsilon absorbs rounding of exact
// multiples such as 180° with six bins. Lattice points never come closer
// than ~1e-4 rad to a non-exact boundary for the window sizes in use.
int SectorOf(Offset offset, int angle_bins) {
  double theta = std::atan2(static_cast<double>(-offset.dy),
                            static_cast<double>(offset.dx));
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  const double position = theta * angle_bins / (2.0 * std::numbers::pi);
  int sector = static_cast<int>(std::floor(position + 1e-9));
  if (sector >= angle_bins) sector -= angle_bins;
  return sector;
}

}  // namespace

void VoteFieldConfig::Validate() const {
  if (angle_bins < 1) {
    throw ConfigError("angle_bins must be positive, got " +
                      std::to_string(angle_bins));
  }
  if (360 % angle_bins != 0) {
    throw ConfigError("angle_bins must divide 360, got " +
                      std::to_string(angle_bins));
  }
  if (ring_extents.empty()) throw ConfigError("ring_extents is empty");
  int previous = 0;
  for (int extent : ring_extents) {
    if (extent < 2 || extent % 2 != 0) {
      throw ConfigError("ring extents must be even and >= 2, got " +
                        std::to_string(extent));
    }
    if (extent <= previous) {
      throw ConfigError("ring extents must be strictly increasing");
    }
    previous = extent;
  }
  for (int region : masked_regions) {
    if (region < 1 || region > region_count()) {
      throw ConfigError("masked region " + std::to_string(region) +
                        " outside 1.." + std::to_string(region_count()));
    }
  }
}

std::optional<MaskMode> ParseMaskMode(const std::string& name) {
  if (name == "only_center") return MaskMode::kOnlyCenter;
  if (name == "no_center") return MaskMode::kNoCenter;
  if (name == "only_context") return MaskMode::kOnlyContext;
  return std::nullopt;
}

std::string MaskModeName(MaskMode mode) {
  switch (mode) {
    case MaskMode::kOnlyCenter:
      return "only_center";
    case MaskMode::kNoCenter:
      return "no_center";
    case MaskMode::kOnlyContext:
      return "only_context";
  }
  return "";
}

std::optional<int> RegionOf(Offset offset, const VoteFieldConfig& config) {
  // Compare squared diameters in integers: d <= e/2  <=>  4 d^2 <= e^2.
  const long long d2 = 4LL * (static_cast<long long>(offset.dy) * offset.dy +
                              static_cast<long long>(offset.dx) * offset.dx);
  const auto& extents = config.ring_extents;
  const long long first = extents.front();
  if (d2 <= first * first) return 1;
  for (std::size_t ring = 1; ring < extents.size(); ++ring) {
    const long long e = extents[ring];
    if (d2 <= e * e) {
      return 2 + static_cast<int>(ring - 1) * config.angle_bins +
             SectorOf(offset, config.angle_bins);
    }
  }
  return std::nullopt;
}

VoteField::VoteField(VoteFieldConfig config) : config_(std::move(config)) {
  config_.Validate();
  region_count_ = config_.region_count();
  field_size_ = config_.field_size();
  offsets_.assign(static_cast<std::size_t>(region_count_), {});
  region_map_.assign(static_cast<std::size_t>(field_size_ * field_size_),
                     kOutside);
  const int half = half_extent();
  for (int row = 0; row < field_size_; ++row) {
    for (int col = 0; col < field_size_; ++col) {
      const Offset offset{row - half, col - half};
      const auto region = RegionOf(offset, config_);
      if (!region) continue;
      region_map_[static_cast<std::size_t>(row * field_size_ + col)] = *region;
      offsets_[static_cast<std::size_t>(*region - 1)].push_back(offset);
    }
  }
  for (int r = 1; r <= region_count_; ++r) {
    if (offsets_[static_cast<std::size_t>(r - 1)].empty()) {
      throw ConfigError("region " + std::to_string(r) +
                        " contains no pixels; rings too thin for " +
                        std::to_string(config_.angle_bins) + " angle bins");
    }
  }
}

int VoteField::ring_of(int region) const {
  if (region == 1) return 0;
  return 1 + (region - 2) / config_.angle_bins;
}

VoteField VoteField::WithMask(std::set<int> masked_regions) const {
  VoteFieldConfig config = config_;
  config.masked_regions = std::move(masked_regions);
  return VoteField(std::move(config));
}

VoteField MaskRings(const VoteField& field, MaskMode mode) {
  std::set<int> masked;
  for (int r = 1; r <= field.region_count(); ++r) {
    const int ring = field.ring_of(r);
    switch (mode) {
      case MaskMode::kOnlyCenter:
        if (ring != 0) masked.insert(r);
        break;
      case MaskMode::kNoCenter:
        if (ring == 0) masked.insert(r);
        break;
      case MaskMode::kOnlyContext:
        if (ring <= 1) masked.insert(r);
        break;
    }
  }
  return field.WithMask(std::move(masked));
}

VoteField MaskRegions(const VoteField& field, const std::set<int>& regions) {
  return field.WithMask(regions);
}

}  // namespace houghvote
