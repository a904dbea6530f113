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
 * \file capture.hpp
 * \brief Raw IF capture files.
 *
 * Layout, all little-endian:
 *
 *   "MMVC"  u32 version
 *   config: f64 bandwidth_hz, f64 chirp_duration_s, u32 samples_per_chirp,
 *           u32 chirps_per_frame, f64 frame_period_s, f64 start_freq_hz,
 *           f64 end_freq_hz, u32 rx_count, u8 has_spacing, f64 antenna_spacing_m,
 *           u32 beam_count, f64 max_steer_rad, u32 point_budget, f64 mti_alpha,
 *           u32 mti_history, f64 tau_s, u32 gate count, (f64 low, f64 high) per gate,
 *           f64 detect_threshold_db
 *   u8 view (0 left, 1 right)
 *   i64 sync reference ns, i64 sync local ns
 *   frames until end of file:
 *     u64 frame index, i64 local timestamp ns,
 *     rx * chirps * samples (f32 re, f32 im) pairs in (rx, chirp, sample) order
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "egoradar/config.hpp"
#include "egoradar/io/format_error.hpp"
#include "egoradar/types.hpp"

namespace egoradar::io {

inline constexpr std::uint32_t kCaptureVersion = 1;

struct CaptureHeader {
  RadarConfig config;
  ViewTag view = ViewTag::Left;
  SyncRecord sync;
};

struct Capture {
  CaptureHeader header;
  std::vector<FrameCube> frames;
};

/// Throws std::invalid_argument if a frame does not match the config or timestamps decrease.
void write_capture(std::ostream& out, const CaptureHeader& header, std::span<const FrameCube> frames);
void write_capture(const std::filesystem::path& path, const CaptureHeader& header, std::span<const FrameCube> frames);

/// Throws FormatError on a bad magic, version, config or truncated frame.
Capture read_capture(std::istream& in, const std::string& source = "<capture>");
Capture read_capture(const std::filesystem::path& path);

}  // namespace egoradar::io
