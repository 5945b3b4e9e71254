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

#include "houghvote/cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "houghvote/dataset.h"
#include "houghvote/decoder.h"
#include "houghvote/errors.h"
#include "houghvote/evalkit.h"
#include "houghvote/field_json.h"
#include "houghvote/losses.h"
#include "houghvote/parallel.h"
#include "houghvote/render.h"
#include "houghvote/tensor_io.h"
#include "houghvote/voting.h"
#include "json.hpp"

namespace houghvote {

namespace {

using nlohmann::json;

// Bad flag values that CLI11 itself cannot reject.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteJsonFile(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

// --mask accepts a named ablation or a comma-separated list of region ids.
VoteField ApplyMask(const VoteField& field, const std::string& mask,
                    std::optional<MaskMode>* mode) {
  if (mask.empty()) return field;
  if (auto parsed = ParseMaskMode(mask)) {
    *mode = parsed;
    return MaskRings(field, *parsed);
  }
  std::set<int> regions;
  std::stringstream list(mask);
  std::string item;
  while (std::getline(list, item, ',')) {
    try {
      std::size_t used = 0;
      const int id = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      regions.insert(id);
    } catch (const std::exception&) {
      throw UsageError("--mask: expected only_center, no_center, only_context "
                       "or a list of region ids, got '" + mask + "'");
    }
  }
  return MaskRegions(field, regions);
}

struct GenFieldArgs {
  int angle_bins = 4;
  std::vector<int> ring_extents = {2, 8, 16};
  std::string mask;
  std::string out;
};

void GenField(const GenFieldArgs& a, std::ostream& out) {
  VoteFieldConfig config;
  config.angle_bins = a.angle_bins;
  config.ring_extents = a.ring_extents;
  std::optional<MaskMode> mode;
  const VoteField field = ApplyMask(VoteField(config), a.mask, &mode);
  if (!a.out.empty()) WriteFieldFile(a.out, field, mode);
  out << "R=" << field.region_count() << " field=" << field.field_size()
      << '\n';
}

struct VoteArgs {
  std::string evidence;
  std::string field;
  std::string mode = "gather";
  std::string out;
};

void Vote(const VoteArgs& a, std::ostream& out) {
  const VoteMode mode = ParseVoteMode(a.mode);
  const VoteField field = ReadFieldFile(a.field);
  const auto evidence = EvidenceFromHvt(ReadHvt(a.evidence));
  const auto maps =
      AggregateMulticlass(evidence, field, mode, DefaultWorkerCount());
  WriteHvt(a.out, PresenceToHvt(maps));
  out << "classes=" << maps.size() << " mode=" << a.mode << '\n';
}

struct DetectArgs {
  std::string presence;
  std::string offsets;
  std::string sizes;
  int stride = kDefaultStride;
  int top_k = kDefaultTopK;
  double sigma = 0.5;
  double score_floor = 0.001;
  bool sigmoid = false;
  double scale = 1.0;
  bool flip = false;
  double image_width = 0.0;
  double image_height = 0.0;
  std::int64_t image_id = 0;
  std::vector<int> category_ids;
  std::string out;
};

void Detect(const DetectArgs& a, std::ostream& out) {
  const auto maps = PresenceFromHvt(ReadHvt(a.presence));
  const PairMap offsets = PairMapFromHvt(ReadHvt(a.offsets));
  const PairMap sizes = PairMapFromHvt(ReadHvt(a.sizes));
  if (!maps.empty() && maps.front().shape() !=
                           PresenceMap::Shape{offsets.dim(0), offsets.dim(1)}) {
    throw ShapeError("presence maps and offset/size maps differ in H×W");
  }
  if (!a.category_ids.empty() && a.category_ids.size() != maps.size()) {
    throw UsageError("--category-ids needs one id per presence map");
  }

  PeakOptions peak_options;
  peak_options.top_k = a.top_k;
  peak_options.apply_sigmoid = a.sigmoid;
  const auto peaks = ExtractPeaks(maps, peak_options);

  DecodeOptions decode_options;
  decode_options.stride = a.stride;
  decode_options.image_width = a.image_width * a.scale;
  decode_options.image_height = a.image_height * a.scale;
  DecodeDiagnostics diagnostics;
  auto detections =
      DecodeBoxes(peaks, offsets, sizes, decode_options, &diagnostics);
  if (a.scale != 1.0 || a.flip) {
    const double width =
        a.image_width > 0.0 ? a.image_width : offsets.dim(1) * a.stride / a.scale;
    detections = RescaleToOriginal(std::move(detections), a.scale, a.flip, width);
  }

  const ScaleResult single{a.scale, std::move(detections)};
  const auto kept = MergeMultiscale(std::span(&single, 1), a.top_k,
                                    {a.sigma, a.score_floor});

  std::vector<DetectionRecord> records;
  for (const auto& det : kept) {
    const int category = a.category_ids.empty()
                             ? det.class_id + 1
                             : a.category_ids[static_cast<std::size_t>(det.class_id)];
    records.push_back({a.image_id, category, det.box, det.score});
  }
  WriteDetectionsJsonl(a.out, records);
  out << "detections=" << records.size()
      << " negative_sizes=" << diagnostics.negative_sizes << '\n';
}

struct MergeArgs {
  std::vector<std::string> inputs;
  int top_k = kDefaultTopK;
  double sigma = 0.5;
  double score_floor = 0.001;
  std::string out;
};

// Merges per-pass JSON-lines results (already in original-image pixels)
// image by image through the same Soft-NMS path as multi-scale testing.
void Merge(const MergeArgs& a, std::ostream& out) {
  std::map<ImageId, std::vector<ScaleResult>> per_image;
  for (const auto& path : a.inputs) {
    std::map<ImageId, ScaleResult> pass;
    for (const auto& r : ReadDetectionsJsonl(path)) {
      Detection det;
      det.class_id = r.category_id;
      det.score = r.score;
      det.box = r.box;
      pass[r.image_id].detections.push_back(det);
    }
    for (auto& [image, result] : pass) {
      per_image[image].push_back(std::move(result));
    }
  }
  std::vector<DetectionRecord> records;
  for (const auto& [image, results] : per_image) {
    for (const auto& det :
         MergeMultiscale(results, a.top_k, {a.sigma, a.score_floor})) {
      records.push_back({image, det.class_id, det.box, det.score});
    }
  }
  WriteDetectionsJsonl(a.out, records);
  out << "images=" << per_image.size() << " detections=" << records.size()
      << '\n';
}

struct RenderArgs {
  std::string evidence;
  std::string field;
  std::vector<int> target;
  std::string background;
  int upscale = 1;
  std::string out;
};

void RenderVotes(const RenderArgs& a, std::ostream& out) {
  const VoteField field = ReadFieldFile(a.field);
  const auto evidence = EvidenceFromHvt(ReadHvt(a.evidence));
  const int row = a.target[0];
  const int col = a.target[1];
  const int cls = a.target[2];
  if (cls < 0 || cls >= static_cast<int>(evidence.size())) {
    throw ValidationError("target class " + std::to_string(cls) +
                          " outside 0.." + std::to_string(evidence.size() - 1));
  }
  const auto& e = evidence[static_cast<std::size_t>(cls)];
  const auto contributions = VoteContributions(e, field, row, col);
  DenseTensor<2> background;
  if (!a.background.empty()) {
    background = PresenceFromHvt(ReadHvt(a.background)).at(0);
  }
  WritePpm(a.out, RenderContributions(contributions, background, a.upscale));
  double total = 0.0;
  for (double c : contributions.values()) total += c;
  out << json({{"target", {row, col, cls}}, {"contribution_sum", total}}).dump()
      << '\n';
}

struct SampleArgs {
  std::string annotations;
  std::int64_t count = 25000;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string report;
};

void Sample(const SampleArgs& a, std::ostream& out) {
  const AnnotationSet set = LoadAnnotations(a.annotations);
  SampleOptions options;
  options.image_count = a.count;
  options.trials = a.trials;
  options.seed = a.seed;
  options.workers = DefaultWorkerCount();
  const SampleResult result = SampleMinitrain(set, options);
  if (!a.out.empty()) {
    WriteAnnotations(a.out, FilterImages(set, result.image_ids));
  }
  const json report = {{"selected_images", result.image_ids.size()},
                       {"best_trial", result.best_trial},
                       {"divergence", DivergenceToJson(result.divergence)},
                       {"stats", StatsToJson(result.stats)}};
  if (!a.report.empty()) WriteJsonFile(a.report, report);
  out << report.dump() << '\n';
}

struct EvalArgs {
  std::string detections;
  std::string gt;
  int max_detections = 100;
  std::string out;
};

void Eval(const EvalArgs& a, std::ostream& out) {
  const AnnotationSet gt = LoadAnnotations(a.gt);
  const auto detections = ReadDetectionsJsonl(a.detections);
  EvalConfig config;
  config.max_detections = a.max_detections;
  const json report = ReportToJson(MatchAndScore(detections, gt, config));
  if (!a.out.empty()) WriteJsonFile(a.out, report);
  out << report.dump() << '\n';
}

struct LossArgs {
  std::string pred_heatmap;
  std::string pred_offsets;
  std::string pred_sizes;
  std::string annotations;
  std::int64_t image_id = 0;
  int stride = kDefaultStride;
};

void Loss(const LossArgs& a, std::ostream& out) {
  const auto planes = PresenceFromHvt(ReadHvt(a.pred_heatmap));
  const PairMap offsets = PairMapFromHvt(ReadHvt(a.pred_offsets));
  const PairMap sizes = PairMapFromHvt(ReadHvt(a.pred_sizes));
  const int classes = static_cast<int>(planes.size());
  const int height = planes.front().dim(0);
  const int width = planes.front().dim(1);
  std::vector<double> stacked;
  for (const auto& p : planes) {
    stacked.insert(stacked.end(), p.values().begin(), p.values().end());
  }
  const HeatmapStack pred =
      ClampProbabilities(HeatmapStack({classes, height, width}, stacked));

  const AnnotationSet set = LoadAnnotations(a.annotations);
  std::vector<int> category_ids;
  for (const auto& c : set.categories) category_ids.push_back(c.id);
  std::sort(category_ids.begin(), category_ids.end());
  if (static_cast<int>(category_ids.size()) != classes) {
    throw ShapeError("heatmap has " + std::to_string(classes) +
                     " classes, annotations have " +
                     std::to_string(category_ids.size()) + " categories");
  }
  std::vector<ObjectAnnotation> objects;
  for (const auto& ann : set.annotations) {
    if (ann.image_id != a.image_id || ann.iscrowd) continue;
    const auto it =
        std::lower_bound(category_ids.begin(), category_ids.end(), ann.category_id);
    objects.push_back({static_cast<int>(it - category_ids.begin()), ann.box});
  }
  const RenderedTargets targets =
      RenderTargets(objects, classes, height, width, a.stride);
  const auto& positions = targets.regression.positions;

  LossComponents c;
  c.focal = FocalLoss(pred, targets.heatmap).value;
  c.offset =
      OffsetLoss(GatherPairs(offsets, positions), targets.regression.offsets).value;
  c.size = SizeLoss(GatherPairs(sizes, positions), targets.regression.sizes).value;
  out << json({{"focal", c.focal},
               {"offset", c.offset},
               {"size", c.size},
               {"total", TotalLoss(c)}})
             .dump()
      << '\n';
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"houghvote: log-polar vote aggregation and detection decoding"};
  app.require_subcommand(1);

  std::function<void()> action;

  GenFieldArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-field", "Build and export a vote field");
  gen_cmd->add_option("--angle-bins", gen.angle_bins, "Angular sectors per ring");
  gen_cmd->add_option("--ring-extents", gen.ring_extents,
                      "Ring diameters in pixels, e.g. 2,8,16")
      ->delimiter(',');
  gen_cmd->add_option("--mask", gen.mask,
                      "only_center | no_center | only_context | id,id,...");
  gen_cmd->add_option("--out", gen.out, "Field JSON to write");
  gen_cmd->callback([&] { action = [&] { GenField(gen, out); }; });

  VoteArgs vote;
  auto* vote_cmd = app.add_subcommand("vote", "Aggregate evidence into presence maps");
  vote_cmd->add_option("--evidence", vote.evidence, "C×H×W×R HVT tensor")->required();
  vote_cmd->add_option("--field", vote.field, "Field JSON")->required();
  vote_cmd->add_option("--mode", vote.mode, "scatter | gather")
      ->check(CLI::IsMember({"scatter", "gather"}));
  vote_cmd->add_option("--out", vote.out, "C×H×W HVT output")->required();
  vote_cmd->callback([&] { action = [&] { Vote(vote, out); }; });

  DetectArgs det;
  auto* det_cmd = app.add_subcommand("detect", "Decode presence maps into boxes");
  det_cmd->add_option("--presence", det.presence, "C×H×W HVT")->required();
  det_cmd->add_option("--offsets", det.offsets, "H×W×2 HVT (dy, dx)")->required();
  det_cmd->add_option("--sizes", det.sizes, "H×W×2 HVT (h, w)")->required();
  det_cmd->add_option("--stride", det.stride)->check(CLI::PositiveNumber);
  det_cmd->add_option("--topk", det.top_k)->check(CLI::PositiveNumber);
  det_cmd->add_option("--soft-nms-sigma", det.sigma)->check(CLI::PositiveNumber);
  det_cmd->add_option("--score-floor", det.score_floor);
  det_cmd->add_flag("--sigmoid", det.sigmoid, "Presence values are logits");
  det_cmd->add_option("--scale", det.scale, "Input resize factor of this pass")
      ->check(CLI::PositiveNumber);
  det_cmd->add_flag("--flip", det.flip, "Pass ran on the mirrored image");
  det_cmd->add_option("--image-width", det.image_width, "Original image width");
  det_cmd->add_option("--image-height", det.image_height, "Original image height");
  det_cmd->add_option("--image-id", det.image_id);
  det_cmd->add_option("--category-ids", det.category_ids,
                      "Category id per presence map (default index + 1)")
      ->delimiter(',');
  det_cmd->add_option("--out", det.out, "JSON-lines detections")->required();
  det_cmd->callback([&] { action = [&] { Detect(det, out); }; });

  MergeArgs merge;
  auto* merge_cmd = app.add_subcommand("merge", "Merge test-time passes with Soft-NMS");
  merge_cmd->add_option("--inputs", merge.inputs, "JSON-lines files")
      ->required()
      ->delimiter(',');
  merge_cmd->add_option("--topk", merge.top_k)->check(CLI::PositiveNumber);
  merge_cmd->add_option("--soft-nms-sigma", merge.sigma)->check(CLI::PositiveNumber);
  merge_cmd->add_option("--score-floor", merge.score_floor);
  merge_cmd->add_option("--out", merge.out)->required();
  merge_cmd->callback([&] { action = [&] { Merge(merge, out); }; });

  RenderArgs render;
  auto* render_cmd =
      app.add_subcommand("render-votes", "Render which pixels vote for a location");
  render_cmd->add_option("--evidence", render.evidence, "C×H×W×R HVT")->required();
  render_cmd->add_option("--field", render.field, "Field JSON")->required();
  render_cmd->add_option("--target", render.target, "row,col,class")
      ->required()
      ->delimiter(',')
      ->expected(3);
  render_cmd->add_option("--background", render.background, "H×W HVT in [0, 1]");
  render_cmd->add_option("--upscale", render.upscale)->check(CLI::PositiveNumber);
  render_cmd->add_option("--out", render.out, "Binary PPM")->required();
  render_cmd->callback([&] { action = [&] { RenderVotes(render, out); }; });

  SampleArgs sample;
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw a stratified minitrain subset");
  sample_cmd->add_option("--annotations", sample.annotations)->required();
  sample_cmd->add_option("--count", sample.count)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--trials", sample.trials)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample.seed);
  sample_cmd->add_option("--out", sample.out, "Filtered COCO JSON");
  sample_cmd->add_option("--report", sample.report, "Stats/divergence JSON");
  sample_cmd->callback([&] { action = [&] { Sample(sample, out); }; });

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Box AP against COCO ground truth");
  eval_cmd->add_option("--detections", eval.detections)->required();
  eval_cmd->add_option("--gt", eval.gt)->required();
  eval_cmd->add_option("--max-dets", eval.max_detections)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--out", eval.out, "AP report JSON");
  eval_cmd->callback([&] { action = [&] { Eval(eval, out); }; });

  LossArgs loss;
  auto* loss_cmd = app.add_subcommand("loss", "Training losses for one image");
  loss_cmd->add_option("--pred-heatmap", loss.pred_heatmap, "C×H×W probabilities")
      ->required();
  loss_cmd->add_option("--pred-offsets", loss.pred_offsets, "H×W×2")->required();
  loss_cmd->add_option("--pred-sizes", loss.pred_sizes, "H×W×2")->required();
  loss_cmd->add_option("--annotations", loss.annotations, "COCO JSON")->required();
  loss_cmd->add_option("--image-id", loss.image_id);
  loss_cmd->add_option("--stride", loss.stride)->check(CLI::PositiveNumber);
  loss_cmd->callback([&] { action = [&] { Loss(loss, out); }; });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace houghvote
