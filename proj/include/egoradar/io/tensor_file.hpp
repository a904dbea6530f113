// Copyright 2026 The egoradar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/**
 * \file tensor_file.hpp
 * \brief Binary tensor files, little-endian.
 *
 * Feature tensors: "MMFT", u32 version, u32 shape[4], f32 data row-major.
 * Complex debug dumps: "MMCT", u32 version, u32 shape[4], (f32 re, f32 im) row-major.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "egoradar/alignment.hpp"
#include "egoradar/io/format_error.hpp"
#include "egoradar/types.hpp"

namespace egoradar::io {

inline constexpr std::uint32_t kTensorVersion = 1;

void write_tensor(std::ostream& out, const FeatureTensor& tensor);
void write_tensor(const std::filesystem::path& path, const FeatureTensor& tensor);
FeatureTensor read_tensor(std::istream& in, const std::string& source = "<tensor>");
FeatureTensor read_tensor(const std::filesystem::path& path);

struct ComplexTensor {
  std::array<std::uint32_t, 4> shape{0, 0, 0, 0};
  std::vector<cfloat> data;
  bool operator==(const ComplexTensor&) const = default;
};

/// Throws std::invalid_argument if the element count disagrees with the shape.
void write_complex_tensor(const std::filesystem::path& path, const std::array<std::uint32_t, 4>& shape,
                          std::span<const cdouble> data);
void write_complex_tensor(const std::filesystem::path& path, const std::array<std::uint32_t, 4>& shape,
                          std::span<const cfloat> data);
ComplexTensor read_complex_tensor(const std::filesystem::path& path);

/// Debug dumps: (rx, chirp, sample, 1), (rx, chirp, bin, 1) and (range, doppler, channel, 1).
void dump(const std::filesystem::path& path, const FrameCube& frame);
void dump(const std::filesystem::path& path, const RangeSpectrum& spectrum);
void dump(const std::filesystem::path& path, const RangeDopplerMap& map);

}  // namespace egoradar::io
