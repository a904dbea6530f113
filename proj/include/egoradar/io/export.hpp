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
 * \file export.hpp
 * \brief Fused point clouds as CSV rows and binary PLY files.
 *
 * CSV columns (fixed): frame,t,view,gate,x,y,z,v,energy,range,az,el
 * with t in seconds, positions in head-frame metres, v in m/s, range in
 * metres and az/el in degrees. view is left|right, gate is upper|lower.
 *
 * PLY vertex properties (fixed): float x, y, z, velocity, energy; uchar view, gate.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "egoradar/types.hpp"

namespace egoradar::io {

inline constexpr std::string_view kCsvHeader = "frame,t,view,gate,x,y,z,v,energy,range,az,el";

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, std::uint64_t frame, double time_s, const PointCloud& cloud);

std::string ply_header(std::size_t vertex_count);
void write_ply(std::ostream& out, const PointCloud& cloud);
void write_ply(const std::filesystem::path& path, const PointCloud& cloud);

struct PlyVertex {
  float x = 0, y = 0, z = 0, velocity = 0, energy = 0;
  std::uint8_t view = 0, gate = 0;
  bool operator==(const PlyVertex&) const = default;
};
/// Reads files produced by write_ply.
std::vector<PlyVertex> read_ply(std::istream& in);

}  // namespace egoradar::io
