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

// HVT tensor files:
//
//   bytes 0..3   magic "HVT1"
//   uint32 LE    ndim
//   uint32 LE    dims[ndim]
//   float32 LE   payload, row-major, last dimension fastest
//
// The payload length must be exactly product(dims) * 4 bytes.

#ifndef HOUGHVOTE_TENSOR_IO_H_
#define HOUGHVOTE_TENSOR_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "houghvote/tensor.h"

namespace houghvote {

struct HvtTensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::size_t ElementCount() const;
  friend bool operator==(const HvtTensor&, const HvtTensor&) = default;
};

std::string EncodeHvt(const HvtTensor& tensor);
HvtTensor DecodeHvt(std::string_view bytes);

void WriteHvt(const std::string& path, const HvtTensor& tensor);
HvtTensor ReadHvt(const std::string& path);

// C×H×W×R, or H×W×R read as a single class.
std::vector<EvidenceTensor> EvidenceFromHvt(const HvtTensor& tensor);
HvtTensor EvidenceToHvt(std::span<const EvidenceTensor> evidence);

// C×H×W, or H×W read as a single class.
std::vector<PresenceMap> PresenceFromHvt(const HvtTensor& tensor);
HvtTensor PresenceToHvt(std::span<const PresenceMap> maps);

// H×W×2.
PairMap PairMapFromHvt(const HvtTensor& tensor);
HvtTensor PairMapToHvt(const PairMap& map);

}  // namespace houghvote

#endif  // HOUGHVOTE_TENSOR_IO_H_
