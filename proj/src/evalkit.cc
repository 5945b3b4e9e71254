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

#include "houghvote/evalkit.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "houghvote/errors.h"

namespace houghvote {

using nlohmann::json;

namespace {

constexpr int kRecallPoints = 101;

enum class AreaScope { kAll, kSmall, kMedium, kLarge };

bool InScope(double area, AreaScope scope) {
  switch (scope) {
    case AreaScope::kAll:
      return true;
    case AreaScope::kSmall:
      return area > 0.0 && SizeBucketOf(area) == SizeBucket::kSmall;
    case AreaScope::kMedium:
      return area > 0.0 && SizeBucketOf(area) == SizeBucket::kMedium;
    case AreaScope::kLarge:
      return area > 0.0 && SizeBucketOf(area) == SizeBucket::kLarge;
  }
  return false;
}

struct ScoredMatch {
  double score;
  bool matched;
};

struct ClassImageKey {
  int category_id;
  ImageId image_id;
  bool operator<(const ClassImageKey& o) const {
    return std::tie(category_id, image_id) < std::tie(o.category_id, o.image_id);
  }
};

// Matches one image/class cell at one threshold. Appends non-ignored
// detections to `out` and returns the number of non-ignored ground truths.
int MatchCell(const std::vector<const Annotation*>& gts,
              const std::vector<const DetectionRecord*>& dets,
              double threshold, AreaScope scope,
              std::vector<ScoredMatch>& out) {
  // Non-ignored ground truth first, so a match to an ignored one only
  // happens when nothing better is available.
  std::vector<const Annotation*> ordered;
  std::vector<bool> ignored;
  for (int pass = 0; pass < 2; ++pass) {
    for (const Annotation* g : gts) {
      const bool ig = g->iscrowd || !InScope(g->area, scope);
      if (ig == (pass == 1)) {
        ordered.push_back(g);
        ignored.push_back(ig);
      }
    }
  }
  int valid = 0;
  for (bool ig : ignored) valid += ig ? 0 : 1;

  std::vector<bool> taken(ordered.size(), false);
  for (const DetectionRecord* d : dets) {
    double best_iou = std::min(threshold, 1.0 - 1e-10);
    int best = -1;
    for (std::size_t g = 0; g < ordered.size(); ++g) {
      if (taken[g] && !ordered[g]->iscrowd) continue;
      if (best > -1 && !ignored[static_cast<std::size_t>(best)] && ignored[g]) break;
      double overlap;
      if (ordered[g]->iscrowd) {
        // Crowd regions: intersection over detection area.
        const Box& a = d->box;
        const Box& b = ordered[g]->box;
        const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
        const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
        const double inter = (iw > 0 && ih > 0) ? iw * ih : 0.0;
        overlap = a.area() > 0 ? inter / a.area() : 0.0;
      } else {
        overlap = Iou(d->box, ordered[g]->box);
      }
      if (overlap < best_iou) continue;
      best_iou = overlap;
      best = static_cast<int>(g);
    }
    if (best >= 0) {
      taken[static_cast<std::size_t>(best)] = true;
      if (!ignored[static_cast<std::size_t>(best)]) out.push_back({d->score, true});
      continue;
    }
    // Unmatched detections outside the size scope are ignored.
    if (InScope(d->box.area(), scope)) out.push_back({d->score, false});
  }
  return valid;
}

// 101-point interpolated precision. Returns nullopt when there is no
// ground truth in scope.
std::optional<double> InterpolatedAp(std::vector<ScoredMatch> matches,
                                     int positives) {
  if (positives == 0) return std::nullopt;
  std::stable_sort(matches.begin(), matches.end(),
                   [](const ScoredMatch& a, const ScoredMatch& b) {
                     return a.score > b.score;
                   });
  std::vector<double> recall(matches.size());
  std::vector<double> precision(matches.size());
  double tp = 0.0;
  double fp = 0.0;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    (matches[i].matched ? tp : fp) += 1.0;
    recall[i] = tp / positives;
    precision[i] = tp / (tp + fp);
  }
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double sum = 0.0;
  for (int k = 0; k < kRecallPoints; ++k) {
    const double threshold = k / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), threshold);
    if (it != recall.end()) {
      sum += precision[static_cast<std::size_t>(it - recall.begin())];
    }
  }
  return sum / kRecallPoints;
}

double MeanOrUndefined(const std::vector<double>& values) {
  if (values.empty()) return -1.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

}  // namespace

json DetectionToJson(const DetectionRecord& r) {
  return {{"image_id", r.image_id},
          {"category_id", r.category_id},
          {"bbox", {r.box.x1, r.box.y1, r.box.width(), r.box.height()}},
          {"score", r.score}};
}

DetectionRecord DetectionFromJson(const json& line) {
  try {
    DetectionRecord r;
    r.image_id = line.at("image_id").get<ImageId>();
    r.category_id = line.at("category_id").get<int>();
    const auto bbox = line.at("bbox").get<std::vector<double>>();
    if (bbox.size() != 4) throw ParseError("detection bbox needs 4 numbers");
    r.box = Box::FromXywh(bbox[0], bbox[1], bbox[2], bbox[3]);
    r.score = line.at("score").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("detection record: ") + e.what());
  }
}

void WriteDetectionsJsonl(const std::string& path,
                          std::span<const DetectionRecord> records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const auto& r : records) out << DetectionToJson(r).dump() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<DetectionRecord> ReadDetectionsJsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<DetectionRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(DetectionFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::vector<double> EvalConfig::DefaultIouThresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back(0.5 + 0.05 * i);
  return t;
}

void EvalConfig::Validate() const {
  if (iou_thresholds.empty()) throw ConfigError("no IoU thresholds");
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    const double t = iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("IoU threshold outside (0, 1]");
    if (i > 0 && !(t > iou_thresholds[i - 1])) {
      throw ConfigError("IoU thresholds must be strictly increasing");
    }
  }
  if (max_detections < 1) throw ConfigError("max_detections must be >= 1");
}

ApReport MatchAndScore(std::span<const DetectionRecord> detections,
                       const AnnotationSet& ground_truth,
                       const EvalConfig& config) {
  config.Validate();
  std::unordered_set<ImageId> images;
  for (const auto& image : ground_truth.images) images.insert(image.id);
  std::unordered_set<int> categories;
  for (const auto& c : ground_truth.categories) categories.insert(c.id);

  std::map<ClassImageKey, std::vector<const Annotation*>> gt_cells;
  for (const auto& a : ground_truth.annotations) {
    gt_cells[{a.category_id, a.image_id}].push_back(&a);
  }
  std::map<ClassImageKey, std::vector<const DetectionRecord*>> det_cells;
  for (const auto& d : detections) {
    if (!images.count(d.image_id)) {
      throw ValidationError("detection references unknown image " +
                            std::to_string(d.image_id));
    }
    if (!categories.count(d.category_id)) {
      throw ValidationError("detection references unknown category " +
                            std::to_string(d.category_id));
    }
    if (!std::isfinite(d.score)) throw ValidationError("non-finite score");
    det_cells[{d.category_id, d.image_id}].push_back(&d);
  }
  for (auto& [key, dets] : det_cells) {
    std::stable_sort(dets.begin(), dets.end(),
                     [](const DetectionRecord* a, const DetectionRecord* b) {
                       return a->score > b->score;
                     });
    if (dets.size() > static_cast<std::size_t>(config.max_detections)) {
      dets.resize(static_cast<std::size_t>(config.max_detections));
    }
  }

  std::vector<int> category_ids(categories.begin(), categories.end());
  std::sort(category_ids.begin(), category_ids.end());
  static const std::vector<const Annotation*> kNoGt;
  static const std::vector<const DetectionRecord*> kNoDets;

  // AP over (class, threshold) cells for one size scope.
  auto evaluate = [&](AreaScope scope, std::vector<double>* per_threshold) {
    std::vector<double> all;
    std::vector<std::vector<double>> by_threshold(config.iou_thresholds.size());
    for (int category : category_ids) {
      for (std::size_t t = 0; t < config.iou_thresholds.size(); ++t) {
        std::vector<ScoredMatch> matches;
        int positives = 0;
        for (const auto& image : ground_truth.images) {
          const ClassImageKey key{category, image.id};
          const auto g = gt_cells.find(key);
          const auto d = det_cells.find(key);
          positives += MatchCell(g == gt_cells.end() ? kNoGt : g->second,
                                 d == det_cells.end() ? kNoDets : d->second,
                                 config.iou_thresholds[t], scope, matches);
        }
        if (const auto ap = InterpolatedAp(std::move(matches), positives)) {
          all.push_back(*ap);
          by_threshold[t].push_back(*ap);
        }
      }
    }
    if (per_threshold != nullptr) {
      for (const auto& values : by_threshold) {
        per_threshold->push_back(MeanOrUndefined(values));
      }
    }
    return MeanOrUndefined(all);
  };

  ApReport report;
  report.ap = evaluate(AreaScope::kAll, &report.per_threshold);
  for (std::size_t t = 0; t < config.iou_thresholds.size(); ++t) {
    if (std::abs(config.iou_thresholds[t] - 0.5) < 1e-9) {
      report.ap50 = report.per_threshold[t];
    }
    if (std::abs(config.iou_thresholds[t] - 0.75) < 1e-9) {
      report.ap75 = report.per_threshold[t];
    }
  }
  report.ap_small = evaluate(AreaScope::kSmall, nullptr);
  report.ap_medium = evaluate(AreaScope::kMedium, nullptr);
  report.ap_large = evaluate(AreaScope::kLarge, nullptr);
  return report;
}

json ReportToJson(const ApReport& report) {
  return {{"AP", report.ap},         {"AP50", report.ap50},
          {"AP75", report.ap75},     {"APS", report.ap_small},
          {"APM", report.ap_medium}, {"APL", report.ap_large},
          {"per_threshold", report.per_threshold}};
}

}  // namespace houghvote
