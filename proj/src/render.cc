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

#include "houghvote/render.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "houghvote/errors.h"
#include "houghvote/voting.h"

namespace houghvote {

const std::array<Rgb, 256>& JetColormap() {
  static const std::array<Rgb, 256> kJet = {{
#include "jet_colormap.inc"
  }};
  return kJet;
}

DenseTensor<2> VoteContributions(const EvidenceTensor& evidence,
                                 const VoteField& field, int target_row,
                                 int target_col) {
  const int height = evidence.dim(0);
  const int width = evidence.dim(1);
  if (target_row < 0 || target_row >= height || target_col < 0 ||
      target_col >= width) {
    throw ValidationError("target (" + std::to_string(target_row) + ", " +
                          std::to_string(target_col) + ") outside the map");
  }
  if (evidence.dim(2) != field.region_count()) {
    throw ShapeError("evidence region count does not match the field");
  }
  PresenceMap one_hot({height, width});
  one_hot(target_row, target_col) = 1.0;
  const EvidenceTensor weights = AggregateAdjoint(one_hot, field);

  DenseTensor<2> out({height, width});
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      double sum = 0.0;
      for (int r = 0; r < evidence.dim(2); ++r) {
        sum += evidence(i, j, r) * weights(i, j, r);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

RgbImage RenderContributions(const DenseTensor<2>& contributions,
                             const DenseTensor<2>& background, int upscale) {
  if (upscale < 1) throw ConfigError("upscale must be >= 1");
  const int height = contributions.dim(0);
  const int width = contributions.dim(1);
  const bool has_background = !background.empty();
  if (has_background && background.shape() != contributions.shape()) {
    throw ShapeError("background does not match the contribution map");
  }
  double peak = 0.0;
  for (double c : contributions.values()) peak = std::max(peak, std::abs(c));

  const auto& jet = JetColormap();
  RgbImage image;
  image.width = width * upscale;
  image.height = height * upscale;
  image.pixels.resize(3 * static_cast<std::size_t>(image.width) * image.height);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      Rgb color{0, 0, 0};
      const double c = contributions(i, j);
      if (c != 0.0 && peak > 0.0) {
        const auto index = static_cast<std::size_t>(
            std::lround(std::abs(c) / peak * 255.0));
        color = jet[std::min<std::size_t>(index, 255)];
      } else if (has_background) {
        const auto gray = static_cast<std::uint8_t>(
            std::lround(std::clamp(background(i, j), 0.0, 1.0) * 255.0));
        color = {gray, gray, gray};
      }
      for (int dy = 0; dy < upscale; ++dy) {
        for (int dx = 0; dx < upscale; ++dx) {
          const std::size_t p =
              3 * (static_cast<std::size_t>(i * upscale + dy) * image.width +
                   static_cast<std::size_t>(j * upscale + dx));
          std::copy(color.begin(), color.end(), image.pixels.begin() + p);
        }
      }
    }
  }
  return image;
}

std::string EncodePpm(const RgbImage& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(image.pixels.begin(), image.pixels.end());
  return out;
}

void WritePpm(const std::string& path, const RgbImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const std::string bytes = EncodePpm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace houghvote
