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

#include "houghvote/tensor_io.h"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "houghvote/errors.h"

namespace houghvote {

namespace {

constexpr char kMagic[4] = {'H', 'V', 'T', '1'};

void PutU32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFFu));
  }
}

std::uint32_t GetU32(std::string_view bytes, std::size_t pos) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + k]))
         << (8 * k);
  }
  return v;
}

float CheckedFloat(double v) {
  if (!std::isfinite(v) || std::abs(v) > std::numeric_limits<float>::max()) {
    throw ValidationError("value not representable as float32");
  }
  return static_cast<float>(v);
}

std::vector<double> Widen(std::span<const float> values, std::size_t begin,
                          std::size_t count) {
  return std::vector<double>(values.begin() + static_cast<long>(begin),
                             values.begin() + static_cast<long>(begin + count));
}

int Dim(std::uint32_t d) {
  if (d > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw ShapeError("tensor dimension too large");
  }
  return static_cast<int>(d);
}

}  // namespace

std::size_t HvtTensor::ElementCount() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

std::string EncodeHvt(const HvtTensor& tensor) {
  if (tensor.values.size() != tensor.ElementCount()) {
    throw ShapeError("HVT payload does not match dims");
  }
  std::string out(kMagic, 4);
  PutU32(out, static_cast<std::uint32_t>(tensor.dims.size()));
  for (auto d : tensor.dims) PutU32(out, d);
  out.reserve(out.size() + 4 * tensor.values.size());
  for (float v : tensor.values) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

HvtTensor DecodeHvt(std::string_view bytes) {
  if (bytes.size() < 8 || bytes.substr(0, 4) != std::string_view(kMagic, 4)) {
    throw ParseError("not an HVT1 tensor (bad magic)");
  }
  HvtTensor tensor;
  const std::uint32_t ndim = GetU32(bytes, 4);
  if (bytes.size() < 8 + 4ull * ndim) throw ParseError("HVT header truncated");
  std::size_t count = 1;
  for (std::uint32_t k = 0; k < ndim; ++k) {
    const std::uint32_t d = GetU32(bytes, 8 + 4 * k);
    if (d != 0 && count > bytes.size() / d) {
      throw ParseError("HVT dims exceed the payload size");
    }
    tensor.dims.push_back(d);
    count *= d;
  }
  const std::size_t header = 8 + 4ull * ndim;
  if (bytes.size() - header != 4 * count) {
    throw ParseError("HVT payload is " + std::to_string(bytes.size() - header) +
                     " bytes, dims require " + std::to_string(4 * count));
  }
  tensor.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    tensor.values[i] = std::bit_cast<float>(GetU32(bytes, header + 4 * i));
  }
  return tensor;
}

void WriteHvt(const std::string& path, const HvtTensor& tensor) {
  const std::string bytes = EncodeHvt(tensor);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

HvtTensor ReadHvt(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return DecodeHvt(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<EvidenceTensor> EvidenceFromHvt(const HvtTensor& tensor) {
  std::vector<std::uint32_t> dims = tensor.dims;
  if (dims.size() == 3) dims.insert(dims.begin(), 1);
  if (dims.size() != 4) {
    throw ShapeError("evidence tensor must be C×H×W×R or H×W×R");
  }
  const EvidenceTensor::Shape shape{Dim(dims[1]), Dim(dims[2]), Dim(dims[3])};
  const std::size_t per_class =
      static_cast<std::size_t>(dims[1]) * dims[2] * dims[3];
  std::vector<EvidenceTensor> out;
  for (std::uint32_t c = 0; c < dims[0]; ++c) {
    out.emplace_back(shape, Widen(tensor.values, c * per_class, per_class));
  }
  return out;
}

HvtTensor EvidenceToHvt(std::span<const EvidenceTensor> evidence) {
  HvtTensor out;
  const auto shape = evidence.empty() ? EvidenceTensor::Shape{0, 0, 0}
                                      : evidence.front().shape();
  out.dims = {static_cast<std::uint32_t>(evidence.size()),
              static_cast<std::uint32_t>(shape[0]),
              static_cast<std::uint32_t>(shape[1]),
              static_cast<std::uint32_t>(shape[2])};
  for (const auto& e : evidence) {
    if (e.shape() != shape) throw ShapeError("class tensors differ in shape");
    for (double v : e.values()) out.values.push_back(CheckedFloat(v));
  }
  return out;
}

std::vector<PresenceMap> PresenceFromHvt(const HvtTensor& tensor) {
  std::vector<std::uint32_t> dims = tensor.dims;
  if (dims.size() == 2) dims.insert(dims.begin(), 1);
  if (dims.size() != 3) throw ShapeError("presence maps must be C×H×W or H×W");
  const PresenceMap::Shape shape{Dim(dims[1]), Dim(dims[2])};
  const std::size_t per_class = static_cast<std::size_t>(dims[1]) * dims[2];
  std::vector<PresenceMap> out;
  for (std::uint32_t c = 0; c < dims[0]; ++c) {
    out.emplace_back(shape, Widen(tensor.values, c * per_class, per_class));
  }
  return out;
}

HvtTensor PresenceToHvt(std::span<const PresenceMap> maps) {
  HvtTensor out;
  const auto shape = maps.empty() ? PresenceMap::Shape{0, 0} : maps.front().shape();
  out.dims = {static_cast<std::uint32_t>(maps.size()),
              static_cast<std::uint32_t>(shape[0]),
              static_cast<std::uint32_t>(shape[1])};
  for (const auto& m : maps) {
    if (m.shape() != shape) throw ShapeError("class maps differ in shape");
    for (double v : m.values()) out.values.push_back(CheckedFloat(v));
  }
  return out;
}

PairMap PairMapFromHvt(const HvtTensor& tensor) {
  if (tensor.dims.size() != 3 || tensor.dims[2] != 2) {
    throw ShapeError("pair map must be H×W×2");
  }
  return PairMap({Dim(tensor.dims[0]), Dim(tensor.dims[1]), 2},
                 Widen(tensor.values, 0, tensor.values.size()));
}

HvtTensor PairMapToHvt(const PairMap& map) {
  HvtTensor out;
  out.dims = {static_cast<std::uint32_t>(map.dim(0)),
              static_cast<std::uint32_t>(map.dim(1)),
              static_cast<std::uint32_t>(map.dim(2))};
  for (double v : map.values()) out.values.push_back(CheckedFloat(v));
  return out;
}

}  // namespace houghvote
