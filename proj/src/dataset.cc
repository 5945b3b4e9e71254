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

#include "houghvote/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "houghvote/errors.h"
#include "houghvote/parallel.h"

namespace houghvote {

using nlohmann::json;

namespace {

using ClassSizeCounts = std::vector<std::array<std::int64_t, 3>>;

DatasetStats StatsFromCounts(std::int64_t image_count,
                             const std::vector<int>& category_ids,
                             const ClassSizeCounts& counts) {
  DatasetStats stats;
  stats.image_count = image_count;
  stats.category_ids = category_ids;
  stats.class_size_counts = counts;
  const std::size_t classes = category_ids.size();
  stats.class_counts.assign(classes, 0);
  stats.class_proportions.assign(classes, 0.0);
  stats.class_size_ratios.assign(classes, {0.0, 0.0, 0.0});
  for (std::size_t c = 0; c < classes; ++c) {
    for (int b = 0; b < 3; ++b) {
      stats.class_counts[c] += counts[c][b];
      stats.size_counts[b] += counts[c][b];
    }
    stats.object_count += stats.class_counts[c];
  }
  const double total = static_cast<double>(stats.object_count);
  for (std::size_t c = 0; c < classes; ++c) {
    if (stats.object_count > 0) {
      stats.class_proportions[c] = stats.class_counts[c] / total;
    }
    if (stats.class_counts[c] > 0) {
      const double n = static_cast<double>(stats.class_counts[c]);
      for (int b = 0; b < 3; ++b) {
        stats.class_size_ratios[c][b] = counts[c][b] / n;
      }
    }
  }
  if (stats.object_count > 0) {
    for (int b = 0; b < 3; ++b) stats.size_ratios[b] = stats.size_counts[b] / total;
  }
  return stats;
}

std::vector<int> SortedCategoryIds(const AnnotationSet& set) {
  std::vector<int> ids;
  ids.reserve(set.categories.size());
  for (const auto& c : set.categories) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Per-image (class index, size bucket) pairs, for fast subset statistics.
struct ImageIndex {
  std::vector<int> category_ids;
  std::vector<ImageId> image_ids;
  std::unordered_map<ImageId, std::size_t> position;
  std::vector<std::vector<std::pair<int, int>>> objects;

  explicit ImageIndex(const AnnotationSet& set)
      : category_ids(SortedCategoryIds(set)) {
    std::unordered_map<int, int> class_index;
    for (std::size_t c = 0; c < category_ids.size(); ++c) {
      class_index[category_ids[c]] = static_cast<int>(c);
    }
    image_ids.reserve(set.images.size());
    for (const auto& image : set.images) {
      position[image.id] = image_ids.size();
      image_ids.push_back(image.id);
    }
    objects.resize(image_ids.size());
    for (const auto& a : set.annotations) {
      objects[position.at(a.image_id)].emplace_back(
          class_index.at(a.category_id),
          static_cast<int>(SizeBucketOf(a.area)));
    }
  }

  DatasetStats Stats(std::span<const ImageId> subset) const {
    ClassSizeCounts counts(category_ids.size(), {0, 0, 0});
    for (ImageId id : subset) {
      for (const auto& [c, b] : objects[position.at(id)]) ++counts[c][b];
    }
    return StatsFromCounts(static_cast<std::int64_t>(subset.size()),
                           category_ids, counts);
  }
};

double L1(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace

void AnnotationSet::Validate() const {
  std::unordered_set<ImageId> image_ids;
  for (const auto& image : images) {
    if (!image_ids.insert(image.id).second) {
      throw ParseError("duplicate image id " + std::to_string(image.id));
    }
  }
  std::unordered_set<int> category_ids;
  for (const auto& category : categories) {
    if (!category_ids.insert(category.id).second) {
      throw ParseError("duplicate category id " + std::to_string(category.id));
    }
  }
  for (const auto& a : annotations) {
    if (!image_ids.count(a.image_id)) {
      throw ParseError("annotation " + std::to_string(a.id) +
                       " references missing image " +
                       std::to_string(a.image_id));
    }
    if (!category_ids.count(a.category_id)) {
      throw ParseError("annotation " + std::to_string(a.id) +
                       " references missing category " +
                       std::to_string(a.category_id));
    }
    if (!(a.area > 0.0) || !std::isfinite(a.area)) {
      throw ParseError("annotation " + std::to_string(a.id) +
                       " has non-positive area");
    }
  }
}

AnnotationSet ParseAnnotations(const json& doc) {
  AnnotationSet set;
  try {
    for (const auto& j : doc.at("images")) {
      ImageInfo image;
      image.id = j.at("id").get<ImageId>();
      image.width = j.value("width", 0);
      image.height = j.value("height", 0);
      image.file_name = j.value("file_name", std::string());
      set.images.push_back(std::move(image));
    }
    for (const auto& j : doc.at("categories")) {
      set.categories.push_back(
          {j.at("id").get<int>(), j.value("name", std::string())});
    }
    if (doc.contains("annotations")) {
      for (const auto& j : doc["annotations"]) {
        Annotation a;
        a.id = j.at("id").get<std::int64_t>();
        a.image_id = j.at("image_id").get<ImageId>();
        a.category_id = j.at("category_id").get<int>();
        const auto bbox = j.at("bbox").get<std::vector<double>>();
        if (bbox.size() != 4) {
          throw ParseError("annotation " + std::to_string(a.id) +
                           ": bbox needs 4 numbers");
        }
        a.box = Box::FromXywh(bbox[0], bbox[1], bbox[2], bbox[3]);
        a.area = j.contains("area") ? j["area"].get<double>()
                                    : bbox[2] * bbox[3];
        a.iscrowd = j.value("iscrowd", 0) != 0;
        set.annotations.push_back(a);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("annotation document: ") + e.what());
  }
  set.Validate();
  return set;
}

AnnotationSet LoadAnnotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ParseAnnotations(doc);
}

json AnnotationsToJson(const AnnotationSet& set) {
  json doc;
  doc["images"] = json::array();
  for (const auto& image : set.images) {
    doc["images"].push_back({{"id", image.id},
                             {"width", image.width},
                             {"height", image.height},
                             {"file_name", image.file_name}});
  }
  doc["annotations"] = json::array();
  for (const auto& a : set.annotations) {
    doc["annotations"].push_back(
        {{"id", a.id},
         {"image_id", a.image_id},
         {"category_id", a.category_id},
         {"bbox", {a.box.x1, a.box.y1, a.box.width(), a.box.height()}},
         {"area", a.area},
         {"iscrowd", a.iscrowd ? 1 : 0}});
  }
  doc["categories"] = json::array();
  for (const auto& c : set.categories) {
    doc["categories"].push_back({{"id", c.id}, {"name", c.name}});
  }
  return doc;
}

void WriteAnnotations(const std::string& path, const AnnotationSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << AnnotationsToJson(set).dump() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

AnnotationSet FilterImages(const AnnotationSet& set,
                           std::span<const ImageId> image_ids) {
  const std::unordered_set<ImageId> keep(image_ids.begin(), image_ids.end());
  AnnotationSet out;
  out.categories = set.categories;
  for (const auto& image : set.images) {
    if (keep.count(image.id)) out.images.push_back(image);
  }
  for (const auto& a : set.annotations) {
    if (keep.count(a.image_id)) out.annotations.push_back(a);
  }
  return out;
}

SizeBucket SizeBucketOf(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw ValidationError("object area must be positive and finite");
  }
  if (area < kSmallAreaLimit) return SizeBucket::kSmall;
  if (area < kMediumAreaLimit) return SizeBucket::kMedium;
  return SizeBucket::kLarge;
}

DatasetStats ComputeStats(const AnnotationSet& set) {
  const ImageIndex index(set);
  return index.Stats(index.image_ids);
}

double Divergence::Worst() const {
  return std::max({class_proportions, size_ratios, class_size_ratios});
}

Divergence ComputeDivergence(const DatasetStats& subset,
                             const DatasetStats& reference) {
  if (subset.category_ids != reference.category_ids) {
    throw ValidationError("divergence: category sets differ");
  }
  Divergence d;
  d.class_proportions = L1(subset.class_proportions, reference.class_proportions);
  d.size_ratios = L1(subset.size_ratios, reference.size_ratios);
  for (std::size_t c = 0; c < reference.category_ids.size(); ++c) {
    d.class_size_ratios += reference.class_proportions[c] *
                           L1(subset.class_size_ratios[c],
                              reference.class_size_ratios[c]);
  }
  return d;
}

std::vector<ImageId> UniformDraw(std::span<const ImageId> ids,
                                 std::int64_t count, std::uint64_t seed,
                                 int trial) {
  if (count < 0 || count > static_cast<std::int64_t>(ids.size())) {
    throw ConfigError("cannot draw " + std::to_string(count) + " of " +
                      std::to_string(ids.size()) + " images");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::vector<ImageId> pool(ids.begin(), ids.end());
  // Partial Fisher-Yates: the first `count` slots become the sample.
  for (std::int64_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::int64_t> pick(
        i, static_cast<std::int64_t>(pool.size()) - 1);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(count));
  std::sort(pool.begin(), pool.end());
  return pool;
}

SampleResult SampleMinitrain(const AnnotationSet& set,
                             const SampleOptions& options) {
  if (options.image_count <= 0) {
    throw ConfigError("image count must be positive");
  }
  if (options.image_count > static_cast<std::int64_t>(set.images.size())) {
    throw ConfigError("image count " + std::to_string(options.image_count) +
                      " exceeds the " + std::to_string(set.images.size()) +
                      " available images");
  }
  if (options.trials < 1) throw ConfigError("trials must be >= 1");

  const ImageIndex index(set);
  const DatasetStats reference = index.Stats(index.image_ids);
  const DivergenceScore score =
      options.score ? options.score
                    : [](const Divergence& d) { return d.Worst(); };

  struct Trial {
    std::vector<ImageId> ids;
    DatasetStats stats;
    Divergence divergence;
    double score = 0.0;
  };
  std::vector<Trial> trials(static_cast<std::size_t>(options.trials));
  ParallelFor(trials.size(), options.workers, [&](std::size_t t) {
    Trial& trial = trials[t];
    trial.ids = UniformDraw(index.image_ids, options.image_count, options.seed,
                            static_cast<int>(t));
    trial.stats = index.Stats(trial.ids);
    trial.divergence = ComputeDivergence(trial.stats, reference);
    trial.score = score(trial.divergence);
  });

  std::size_t best = 0;
  for (std::size_t t = 1; t < trials.size(); ++t) {
    if (trials[t].score < trials[best].score) best = t;
  }
  SampleResult result;
  result.image_ids = std::move(trials[best].ids);
  result.stats = std::move(trials[best].stats);
  result.divergence = trials[best].divergence;
  result.best_trial = static_cast<int>(best);
  return result;
}

json StatsToJson(const DatasetStats& stats) {
  json doc;
  doc["image_count"] = stats.image_count;
  doc["object_count"] = stats.object_count;
  doc["size_counts"] = {{"small", stats.size_counts[0]},
                        {"medium", stats.size_counts[1]},
                        {"large", stats.size_counts[2]}};
  doc["size_ratios"] = {{"small", stats.size_ratios[0]},
                        {"medium", stats.size_ratios[1]},
                        {"large", stats.size_ratios[2]}};
  json classes = json::array();
  for (std::size_t c = 0; c < stats.category_ids.size(); ++c) {
    classes.push_back({{"category_id", stats.category_ids[c]},
                       {"count", stats.class_counts[c]},
                       {"proportion", stats.class_proportions[c]},
                       {"size_ratios", stats.class_size_ratios[c]}});
  }
  doc["classes"] = std::move(classes);
  return doc;
}

json DivergenceToJson(const Divergence& divergence) {
  return {{"class_proportions", divergence.class_proportions},
          {"size_ratios", divergence.size_ratios},
          {"class_size_ratios", divergence.class_size_ratios},
          {"worst", divergence.Worst()}};
}

}  // namespace houghvote
