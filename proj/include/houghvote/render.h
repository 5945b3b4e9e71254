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

// "Who voted for this detection" maps.

#ifndef HOUGHVOTE_RENDER_H_
#define HOUGHVOTE_RENDER_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "houghvote/tensor.h"
#include "houghvote/vote_field.h"

namespace houghvote {

using Rgb = std::array<std::uint8_t, 3>;

const std::array<Rgb, 256>& JetColormap();

// Contribution of every source pixel to presence(target_row, target_col):
//   C(i, j) = sum_r E(i, j, r) * A(i, j, r),
// where A is the adjoint applied to a one-hot map at the target. The map
// sums to the presence value at the target.
DenseTensor<2> VoteContributions(const EvidenceTensor& evidence,
                                 const VoteField& field, int target_row,
                                 int target_col);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  Rgb at(int row, int col) const {
    const std::size_t p = 3 * (static_cast<std::size_t>(row) * width + col);
    return {pixels[p], pixels[p + 1], pixels[p + 2]};
  }
};

// Pixels with nonzero contribution get the jet color of |C| / max|C|; the
// others show the background, a grayscale map in [0, 1] (black if empty).
// Each map pixel becomes an upscale × upscale block.
RgbImage RenderContributions(const DenseTensor<2>& contributions,
                             const DenseTensor<2>& background = {},
                             int upscale = 1);

std::string EncodePpm(const RgbImage& image);
void WritePpm(const std::string& path, const RgbImage& image);

}  // namespace houghvote

#endif  // HOUGHVOTE_RENDER_H_
