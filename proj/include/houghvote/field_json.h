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

#ifndef HOUGHVOTE_FIELD_JSON_H_
#define HOUGHVOTE_FIELD_JSON_H_

#include <optional>
#include <string>

#include "houghvote/vote_field.h"
#include "json.hpp"

namespace houghvote {

// Field description document:
//   {"angle_bins": 4, "ring_extents": [2, 8, 16], "masked_regions": [],
//    "mask_mode": "only_center",            // only when a named mode was used
//    "region_count": 9, "field_size": 17, "region_sizes": [5, ...],
//    "region_map": [[-1, -1, ...], ...]}    // rows, -1 = outside
nlohmann::json FieldToJson(const VoteField& field,
                           std::optional<MaskMode> mask_mode = std::nullopt);

// Rebuilds the field from the config keys. When region_count, field_size or
// region_map are present they must agree with the rebuilt geometry.
VoteField FieldFromJson(const nlohmann::json& doc);

void WriteFieldFile(const std::string& path, const VoteField& field,
                    std::optional<MaskMode> mask_mode = std::nullopt);
VoteField ReadFieldFile(const std::string& path);

}  // namespace houghvote

#endif  // HOUGHVOTE_FIELD_JSON_H_
