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

// COCO-format annotation sets and the stratified "minitrain" sampler.

#ifndef HOUGHVOTE_DATASET_H_
#define HOUGHVOTE_DATASET_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "houghvote/box.h"
#include "json.hpp"

namespace houghvote {

using ImageId = std::int64_t;

struct ImageInfo {
  ImageId id = 0;
  int width = 0;
  int height = 0;
  std::string file_name;
};

struct Annotation {
  std::int64_t id = 0;
  ImageId image_id = 0;
  int category_id = 0;
  Box box;  // corner form; serialized as COCO [x, y, w, h]
  double area = 0.0;
  bool iscrowd = false;
};

struct Category {
  int id = 0;
  std::string name;
};

struct AnnotationSet {
  std::vector<ImageInfo> images;
  std::vector<Annotation> annotations;
  std::vector<Category> categories;

  // Throws ParseError on dangling image/category references, duplicate ids
  // or non-positive areas.
  void Validate() const;
};

// Missing "area" falls back to bbox w*h. Validates before returning.
AnnotationSet ParseAnnotations(const nlohmann::json& doc);
AnnotationSet LoadAnnotations(const std::string& path);
nlohmann::json AnnotationsToJson(const AnnotationSet& set);
void WriteAnnotations(const std::string& path, const AnnotationSet& set);

// Keeps the listed images (in original order) and their annotations.
AnnotationSet FilterImages(const AnnotationSet& set,
                           std::span<const ImageId> image_ids);

enum class SizeBucket { kSmall = 0, kMedium = 1, kLarge = 2 };

inline constexpr double kSmallAreaLimit = 32.0 * 32.0;
inline constexpr double kMediumAreaLimit = 96.0 * 96.0;

// small < 32^2 <= medium < 96^2 <= large. Throws ValidationError for
// non-positive or non-finite areas.
SizeBucket SizeBucketOf(double area);

struct DatasetStats {
  std::int64_t image_count = 0;
  std::int64_t object_count = 0;
  std::vector<int> category_ids;  // sorted; indexes the per-class vectors
  std::vector<std::int64_t> class_counts;
  std::vector<double> class_proportions;
  std::array<std::int64_t, 3> size_counts{};
  std::array<double, 3> size_ratios{};
  std::vector<std::array<std::int64_t, 3>> class_size_counts;
  std::vector<std::array<double, 3>> class_size_ratios;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

DatasetStats ComputeStats(const AnnotationSet& set);

// L1 distances between subset and reference proportion vectors, one per
// preserved quantity. The per-class size family is the reference-weighted
// mean of per-class L1 distances.
struct Divergence {
  double class_proportions = 0.0;
  double size_ratios = 0.0;
  double class_size_ratios = 0.0;

  double Worst() const;
};

Divergence ComputeDivergence(const DatasetStats& subset,
                             const DatasetStats& reference);

using DivergenceScore = std::function<double(const Divergence&)>;

struct SampleOptions {
  std::int64_t image_count = 25000;
  int trials = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  DivergenceScore score;  // empty = Divergence::Worst
};

struct SampleResult {
  std::vector<ImageId> image_ids;  // sorted ascending
  DatasetStats stats;
  Divergence divergence;
  int best_trial = 0;
};

// Uniform draw of `count` distinct image ids for one trial. Trial t uses its
// own generator seeded from (seed, t), so trials are order-independent.
std::vector<ImageId> UniformDraw(std::span<const ImageId> ids,
                                 std::int64_t count, std::uint64_t seed,
                                 int trial);

// Best-of-`trials` uniform draws, scored against the full-set stats. Ties
// go to the lowest trial index.
SampleResult SampleMinitrain(const AnnotationSet& set,
                             const SampleOptions& options);

nlohmann::json StatsToJson(const DatasetStats& stats);
nlohmann::json DivergenceToJson(const Divergence& divergence);

}  // namespace houghvote

#endif  // HOUGHVOTE_DATASET_H_
