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


#include "egoradar/io/capture.hpp"

#include <fstream>

#include <fmt/format.h>

#include "egoradar/io/binary.hpp"

namespace egoradar::io {

namespace {

constexpr std::string_view kMagic = "MMVC";

void write_params(std::ostream& out, const RadarParams& p) {
  write_f64(out, p.bandwidth_hz);
  write_f64(out, p.chirp_duration_s);
  write_u32(out, p.samples_per_chirp);
  write_u32(out, p.chirps_per_frame);
  write_f64(out, p.frame_period_s);
  write_f64(out, p.start_freq_hz);
  write_f64(out, p.end_freq_hz);
  write_u32(out, p.rx_count);
  write_u8(out, p.antenna_spacing_m ? 1 : 0);
  write_f64(out, p.antenna_spacing_m.value_or(0.0));
  write_u32(out, p.beam_count);
  write_f64(out, p.max_steer_rad);
  write_u32(out, p.point_budget);
  write_f64(out, p.mti_alpha);
  write_u32(out, p.mti_history);
  write_f64(out, p.tau_s);
  write_u32(out, static_cast<std::uint32_t>(p.gate_bounds_m.size()));
  for (const auto& g : p.gate_bounds_m) {
    write_f64(out, g.low_m);
    write_f64(out, g.high_m);
  }
  write_f64(out, p.detect_threshold_db);
}

RadarParams read_params(std::istream& in) {
  RadarParams p;
  p.bandwidth_hz = read_f64(in);
  p.chirp_duration_s = read_f64(in);
  p.samples_per_chirp = read_u32(in);
  p.chirps_per_frame = read_u32(in);
  p.frame_period_s = read_f64(in);
  p.start_freq_hz = read_f64(in);
  p.end_freq_hz = read_f64(in);
  p.rx_count = read_u32(in);
  const bool has_spacing = read_u8(in) != 0;
  const double spacing = read_f64(in);
  if (has_spacing) {
    p.antenna_spacing_m = spacing;
  } else {
    p.antenna_spacing_m.reset();
  }
  p.beam_count = read_u32(in);
  p.max_steer_rad = read_f64(in);
  p.point_budget = read_u32(in);
  p.mti_alpha = read_f64(in);
  p.mti_history = read_u32(in);
  p.tau_s = read_f64(in);
  const std::uint32_t gates = read_u32(in);
  if (gates > 64) throw std::runtime_error(fmt::format("implausible gate count {}", gates));
  p.gate_bounds_m.resize(gates);
  for (auto& g : p.gate_bounds_m) {
    g.low_m = read_f64(in);
    g.high_m = read_f64(in);
  }
  p.detect_threshold_db = read_f64(in);
  return p;
}

}  // namespace

void write_capture(std::ostream& out, const CaptureHeader& header, std::span<const FrameCube> frames) {
  const RadarConfig& cfg = header.config;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!frames[i].matches(cfg)) throw std::invalid_argument(fmt::format("write_capture: frame {} does not match the config", i));
    if (i && frames[i].local_timestamp < frames[i - 1].local_timestamp) {
      throw std::invalid_argument(fmt::format("write_capture: frame {} timestamp decreases", i));
    }
  }
  write_magic(out, kMagic);
  write_u32(out, kCaptureVersion);
  write_params(out, cfg.params());
  write_u8(out, static_cast<std::uint8_t>(header.view));
  write_i64(out, header.sync.reference.count());
  write_i64(out, header.sync.local.count());
  for (const auto& f : frames) {
    write_u64(out, f.frame_index);
    write_i64(out, f.local_timestamp.count());
    for (const cfloat& s : f.samples) {
      write_f32(out, s.real());
      write_f32(out, s.imag());
    }
  }
  if (!out) throw std::runtime_error("write_capture: write failed");
}

void write_capture(const std::filesystem::path& path, const CaptureHeader& header, std::span<const FrameCube> frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  write_capture(out, header, frames);
}

Capture read_capture(std::istream& in, const std::string& source) {
  Capture cap;
  try {
    if (read_magic(in, kMagic.size()) != kMagic) throw FormatError(source, 0, "not a capture file (bad magic)");
    const std::uint32_t version = read_u32(in);
    if (version != kCaptureVersion) throw FormatError(source, 0, fmt::format("unsupported capture version {}", version));
    RadarParams params = read_params(in);
    try {
      cap.header.config = validate_config(params);
    } catch (const ConfigError& e) {
      throw FormatError(source, 0, fmt::format("embedded config invalid: {}", e.what()));
    }
    const std::uint8_t view = read_u8(in);
    if (view > 1) throw FormatError(source, 0, fmt::format("bad view tag {}", view));
    cap.header.view = static_cast<ViewTag>(view);
    cap.header.sync.reference = Timestamp(read_i64(in));
    cap.header.sync.local = Timestamp(read_i64(in));

    const RadarConfig& cfg = cap.header.config;
    while (!at_eof(in)) {
      FrameCube f(cfg);
      f.view = cap.header.view;
      f.frame_index = read_u64(in);
      f.local_timestamp = Timestamp(read_i64(in));
      for (cfloat& s : f.samples) {
        const float re = read_f32(in);
        const float im = read_f32(in);
        s = {re, im};
      }
      if (!cap.frames.empty() && f.local_timestamp < cap.frames.back().local_timestamp) {
        throw FormatError(source, 0, fmt::format("frame {} timestamp decreases", cap.frames.size()));
      }
      cap.frames.push_back(std::move(f));
    }
  } catch (const FormatError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw FormatError(source, 0, fmt::format("frame {}: {}", cap.frames.size(), e.what()));
  }
  return cap;
}

Capture read_capture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(fmt::format("capture file not found: {}", path.string()));
  return read_capture(in, path.string());
}

}  // namespace egoradar::io
