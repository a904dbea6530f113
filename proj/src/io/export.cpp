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


#include "egoradar/io/export.hpp"

#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "egoradar/io/binary.hpp"

namespace egoradar::io {

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_rows(std::ostream& out, std::uint64_t frame, double time_s, const PointCloud& cloud) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  for (const auto& p : cloud.points) {
    out << fmt::format("{},{:.6f},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6g},{:.6f},{:.3f},{:.3f}\n", frame, time_s,
                       to_string(p.view), to_string(p.gate), p.position_m.x(), p.position_m.y(), p.position_m.z(),
                       p.radial_velocity_mps, p.energy, p.range_m, p.azimuth_rad * kDeg, p.elevation_rad * kDeg);
  }
}

std::string ply_header(std::size_t vertex_count) {
  return fmt::format(
      "ply\n"
      "format binary_little_endian 1.0\n"
      "element vertex {}\n"
      "property float x\n"
      "property float y\n"
      "property float z\n"
      "property float velocity\n"
      "property float energy\n"
      "property uchar view\n"
      "property uchar gate\n"
      "end_header\n",
      vertex_count);
}

void write_ply(std::ostream& out, const PointCloud& cloud) {
  out << ply_header(cloud.size());
  for (const auto& p : cloud.points) {
    write_f32(out, static_cast<float>(p.position_m.x()));
    write_f32(out, static_cast<float>(p.position_m.y()));
    write_f32(out, static_cast<float>(p.position_m.z()));
    write_f32(out, static_cast<float>(p.radial_velocity_mps));
    write_f32(out, static_cast<float>(p.energy));
    write_u8(out, static_cast<std::uint8_t>(p.view));
    write_u8(out, static_cast<std::uint8_t>(p.gate));
  }
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  write_ply(out, cloud);
}

std::vector<PlyVertex> read_ply(std::istream& in) {
  std::string line;
  std::size_t count = 0;
  bool have_count = false;
  while (std::getline(in, line) && line != "end_header") {
    constexpr std::string_view kElement = "element vertex ";
    if (line.starts_with(kElement)) {
      count = std::stoul(line.substr(kElement.size()));
      have_count = true;
    }
  }
  if (line != "end_header" || !have_count) throw std::runtime_error("read_ply: malformed header");
  std::vector<PlyVertex> out(count);
  for (auto& v : out) {
    v.x = read_f32(in);
    v.y = read_f32(in);
    v.z = read_f32(in);
    v.velocity = read_f32(in);
    v.energy = read_f32(in);
    v.view = read_u8(in);
    v.gate = read_u8(in);
  }
  return out;
}

}  // namespace egoradar::io
