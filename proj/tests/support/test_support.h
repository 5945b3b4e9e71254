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

// Generators and independent oracles shared by the unit tests and the
// acceptance suite.

#ifndef HOUGHVOTE_TESTS_SUPPORT_TEST_SUPPORT_H_
#define HOUGHVOTE_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "houghvote/box.h"
#include "houghvote/dataset.h"
#include "houghvote/tensor.h"
#include "houghvote/vote_field.h"

namespace houghvote::testing {

struct FieldCase {
  std::string name;
  VoteFieldConfig config;
  int expected_regions = 0;
  int expected_size = 0;
};

// The four published geometries.
std::vector<FieldCase> PublishedFields();

EvidenceTensor RandomEvidence(int height, int width, int regions,
                              std::mt19937_64& rng);
PresenceMap RandomMap(int height, int width, std::mt19937_64& rng);

double InfNorm(std::span<const double> v);
double MaxAbsDiff(std::span<const double> a, std::span<const double> b);
double Dot(std::span<const double> a, std::span<const double> b);

// Region membership from first principles: floating-point distance and
// atan2 angle in degrees. Shares no code with the library.
std::optional<int> OracleRegionOf(int dy, int dx, int angle_bins,
                                  const std::vector<int>& ring_extents);

// O(H·W·H·W·R) presence map straight from the membership oracle: every
// (source, target) pair whose difference lies in region r contributes
// E / K_r. K_r is counted with the oracle as well.
PresenceMap BruteForceAggregate(const EvidenceTensor& evidence,
                                const VoteFieldConfig& config);

// A single-image scene of planted objects: presence bumps, offset and size
// maps consistent with the boxes, at an arbitrary input scale.
struct PlantedObject {
  int class_index = 0;
  Box box;  // original-image pixels
  double score = 0.9;
};

struct SceneMaps {
  std::vector<PresenceMap> presence;
  PairMap offsets;
  PairMap sizes;
  double image_width = 0.0;  // scaled frame
  double image_height = 0.0;
};

// Non-overlapping boxes of 24..96 px inside a width × height image.
std::vector<PlantedObject> PlantObjects(int count, int classes, int width,
                                        int height, std::mt19937_64& rng);

// Renders the scene as a detector would see it after resizing the image by
// `scale` (and mirroring it when `flip`), at the given stride.
SceneMaps RenderScene(const std::vector<PlantedObject>& objects, int classes,
                      int width, int height, double scale, bool flip,
                      int stride);

// COCO-style set of `images` images with classes uniform over `classes`
// categories, `min_objects`..`max_objects` objects per image and box sides
// log-uniform in [8, 256] px.
AnnotationSet SyntheticAnnotations(int images, int classes, int min_objects,
                                   int max_objects, std::uint64_t seed);

// Scratch directory unique to the test process.
std::string TempPath(const std::string& name);

}  // namespace houghvote::testing

#endif  // HOUGHVOTE_TESTS_SUPPORT_TEST_SUPPORT_H_
