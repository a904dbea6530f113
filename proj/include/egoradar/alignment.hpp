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
 * \file alignment.hpp
 * \brief Clock calibration, left/right pairing, tau-gated windows and export tensors.
 *
 * Each stream's local timestamps are mapped onto the shared reference clock
 * with a single offset O = t_reference - t_local taken at one query instant.
 * Paired frames are then cut into windows of N consecutive frames; a window is
 * discarded when the average timestamp gap across it exceeds tau.
 */

#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egoradar/config.hpp"
#include "egoradar/types.hpp"

namespace egoradar {

using namespace std::chrono_literals;

inline constexpr Timestamp kDefaultMaxSkew = 10ms;
inline constexpr std::size_t kDefaultWindowFrames = 10;

struct ClockOffset {
  /// Reference minus local.
  Timestamp offset{0};
  std::string stream;
  bool operator==(const ClockOffset&) const = default;
};

/// Throws std::invalid_argument for non-finite input.
ClockOffset compute_offset(double reference_time_s, double local_time_s, std::string stream = {});
ClockOffset compute_offset(const SyncRecord& record, std::string stream = {});

/// local + offset, for every timestamp.
std::vector<Timestamp> calibrate_timestamps(std::span<const Timestamp> local, const ClockOffset& offset);
/// Sets calibrated_timestamp = local_timestamp + offset on every frame, replacing any previous value.
void calibrate_timestamps(std::span<FrameCube> stream, const ClockOffset& offset);
/// Piecewise calibration: each timestamp uses the latest record taken at or
/// before it (the first record for earlier timestamps). Records must be
/// ordered by local time.
std::vector<Timestamp> calibrate_timestamps(std::span<const Timestamp> local, std::span<const SyncRecord> records);

struct FramePair {
  std::size_t left = 0;
  std::size_t right = 0;
  Timestamp left_time{0};
  Timestamp right_time{0};

  Timestamp skew() const noexcept { return left_time > right_time ? left_time - right_time : right_time - left_time; }
  bool operator==(const FramePair&) const = default;
};

struct Pairing {
  std::vector<FramePair> pairs;
  /// Mutual nearest neighbours rejected for exceeding the skew bound.
  std::size_t dropped = 0;
  std::size_t unmatched_left = 0;
  std::size_t unmatched_right = 0;
  /// pairs / min(left frames, right frames); 0 when either stream is empty.
  double rate = 0.0;
};

/// Pairs frames that are each other's nearest neighbour in calibrated time
/// (ties go to the earlier frame) and lie within `max_skew`. Each frame is
/// used at most once and the result is symmetric in its arguments.
/// Timestamps must be non-decreasing.
Pairing pair_views(std::span<const Timestamp> left, std::span<const Timestamp> right,
                   Timestamp max_skew = kDefaultMaxSkew);
/// Frame overload; throws std::invalid_argument if a frame is not calibrated.
Pairing pair_views(std::span<const FrameCube> left, std::span<const FrameCube> right,
                   Timestamp max_skew = kDefaultMaxSkew);

struct AlignedWindow {
  std::vector<FramePair> frames;
  /// Nearest label-stream timestamp for each frame, when a label stream is given.
  std::vector<Timestamp> label_times;
  double mean_gap_s = 0.0;
  bool accepted = false;
  /// Fused cloud per frame, filled in after spatial processing.
  std::vector<PointCloud> fused;
};

/// Splits runs of consecutive pairs into windows of `frames_per_window`
/// frames (a trailing partial window is dropped). The gap of a frame is its
/// distance to the nearest label timestamp (measured from the midpoint of the
/// left/right times), or the left/right skew without labels. A window is
/// rejected iff the mean gap exceeds tau.
std::vector<AlignedWindow> gate_windows(std::span<const FramePair> pairs,
                                        std::optional<std::span<const Timestamp>> labels,
                                        std::size_t frames_per_window, Timestamp tau);

/// Concatenates two per-view clouds. Throws std::invalid_argument naming the
/// view whose point count differs from config.points_per_view().
PointCloud merge_views(const PointCloud& left, const PointCloud& right, const RadarConfig& config);

inline constexpr std::size_t kFeatureCount = 8;

/// Dense float tensor (window, frame, point, feature), row-major. Features are
/// x, y, z, radial velocity, energy, range, view (0 left, 1 right), gate (0 upper, 1 lower).
struct FeatureTensor {
  std::array<std::uint32_t, 4> shape{0, 0, 0, kFeatureCount};
  std::vector<float> data;

  std::size_t offset(std::size_t w, std::size_t f, std::size_t p, std::size_t k) const noexcept {
    return ((w * shape[1] + f) * shape[2] + p) * shape[3] + k;
  }
  float at(std::size_t w, std::size_t f, std::size_t p, std::size_t k) const { return data[offset(w, f, p, k)]; }
  bool operator==(const FeatureTensor&) const = default;
};

/// Throws std::invalid_argument for rejected windows, windows without fused
/// clouds, or inconsistent frame/point counts.
FeatureTensor assemble_feature_tensor(std::span<const AlignedWindow> windows);

}  // namespace egoradar
