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

#ifndef HOUGHVOTE_TENSOR_H_
#define HOUGHVOTE_TENSOR_H_

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "houghvote/errors.h"

namespace houghvote {

// Dense row-major tensor of doubles with a compile-time rank. The last
// dimension varies fastest. Values are stored in double precision so that
// accumulations stay well below the tolerances the voting identities need,
// whatever the precision of the file they were read from.
template <std::size_t Rank>
class DenseTensor {
 public:
  using Shape = std::array<int, Rank>;

  DenseTensor() { shape_.fill(0); }

  explicit DenseTensor(const Shape& shape, double fill = 0.0)
      : shape_(shape), values_(CountOf(shape), fill) {}

  DenseTensor(const Shape& shape, std::vector<double> values)
      : shape_(shape), values_(std::move(values)) {
    if (values_.size() != CountOf(shape)) {
      throw ShapeError("tensor payload has " + std::to_string(values_.size()) +
                       " values, shape requires " +
                       std::to_string(CountOf(shape)));
    }
  }

  const Shape& shape() const { return shape_; }
  int dim(std::size_t axis) const { return shape_[axis]; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  template <typename... Index>
  double& operator()(Index... index) {
    static_assert(sizeof...(Index) == Rank);
    return values_[Offset({static_cast<int>(index)...})];
  }
  template <typename... Index>
  double operator()(Index... index) const {
    static_assert(sizeof...(Index) == Rank);
    return values_[Offset({static_cast<int>(index)...})];
  }

  bool AllFinite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  static std::size_t CountOf(const Shape& shape) {
    std::size_t n = 1;
    for (int d : shape) {
      if (d < 0) throw ShapeError("negative tensor dimension");
      n *= static_cast<std::size_t>(d);
    }
    return n;
  }

  std::size_t Offset(const std::array<int, Rank>& index) const {
    std::size_t offset = 0;
    for (std::size_t a = 0; a < Rank; ++a) {
      offset = offset * static_cast<std::size_t>(shape_[a]) +
               static_cast<std::size_t>(index[a]);
    }
    return offset;
  }

  Shape shape_;
  std::vector<double> values_;
};

// H×W×R visual-evidence scores for one class; channel r votes through
// region r + 1 of the vote field.
using EvidenceTensor = DenseTensor<3>;

// H×W accumulated votes for one class.
using PresenceMap = DenseTensor<2>;

// H×W×2 per-pixel pair maps: (dy, dx) offsets or (h, w) sizes.
using PairMap = DenseTensor<3>;

// C×H×W ground-truth or predicted heatmaps.
using HeatmapStack = DenseTensor<3>;

}  // namespace houghvote

#endif  // HOUGHVOTE_TENSOR_H_
