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

#include "houghvote/field_json.h"

#include <fstream>

#include "houghvote/errors.h"

namespace houghvote {

using nlohmann::json;

json FieldToJson(const VoteField& field, std::optional<MaskMode> mask_mode) {
  const auto& config = field.config();
  json doc;
  doc["angle_bins"] = config.angle_bins;
  doc["ring_extents"] = config.ring_extents;
  doc["masked_regions"] = json::array();
  for (int r : config.masked_regions) doc["masked_regions"].push_back(r);
  if (mask_mode) doc["mask_mode"] = MaskModeName(*mask_mode);
  doc["region_count"] = field.region_count();
  doc["field_size"] = field.field_size();
  json sizes = json::array();
  for (int r = 1; r <= field.region_count(); ++r) {
    sizes.push_back(field.region_size(r));
  }
  doc["region_sizes"] = std::move(sizes);
  json rows = json::array();
  for (int row = 0; row < field.field_size(); ++row) {
    json cells = json::array();
    for (int col = 0; col < field.field_size(); ++col) {
      cells.push_back(field.region_at(row, col));
    }
    rows.push_back(std::move(cells));
  }
  doc["region_map"] = std::move(rows);
  return doc;
}

VoteField FieldFromJson(const json& doc) {
  VoteFieldConfig config;
  try {
    config.angle_bins = doc.at("angle_bins").get<int>();
    config.ring_extents = doc.at("ring_extents").get<std::vector<int>>();
    if (doc.contains("masked_regions")) {
      for (int r : doc["masked_regions"].get<std::vector<int>>()) {
        config.masked_regions.insert(r);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("field document: ") + e.what());
  }
  VoteField field(std::move(config));

  try {
    if (doc.contains("region_count") &&
        doc["region_count"].get<int>() != field.region_count()) {
      throw ParseError("field document: region_count disagrees with config");
    }
    if (doc.contains("field_size") &&
        doc["field_size"].get<int>() != field.field_size()) {
      throw ParseError("field document: field_size disagrees with config");
    }
    if (doc.contains("region_map")) {
      const auto& rows = doc["region_map"];
      if (!rows.is_array() ||
          rows.size() != static_cast<std::size_t>(field.field_size())) {
        throw ParseError("field document: region_map has wrong row count");
      }
      for (int row = 0; row < field.field_size(); ++row) {
        const auto cells = rows[static_cast<std::size_t>(row)]
                               .get<std::vector<int>>();
        if (cells.size() != static_cast<std::size_t>(field.field_size())) {
          throw ParseError("field document: region_map row " +
                           std::to_string(row) + " has wrong length");
        }
        for (int col = 0; col < field.field_size(); ++col) {
          if (cells[static_cast<std::size_t>(col)] !=
              field.region_at(row, col)) {
            throw ParseError("field document: region_map disagrees with "
                             "config at (" + std::to_string(row) + ", " +
                             std::to_string(col) + ")");
          }
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("field document: ") + e.what());
  }
  return field;
}

void WriteFieldFile(const std::string& path, const VoteField& field,
                    std::optional<MaskMode> mask_mode) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << FieldToJson(field, mask_mode).dump(1) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

VoteField ReadFieldFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return FieldFromJson(doc);
}

}  // namespace houghvote
