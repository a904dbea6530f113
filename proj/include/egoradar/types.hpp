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

#pragma once

#include <chrono>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "egoradar/config.hpp"

namespace egoradar {

using Timestamp = std::chrono::nanoseconds;
using cfloat = std::complex<float>;
using cdouble = std::complex<double>;

enum class ViewTag : std::uint8_t { Left = 0, Right = 1 };
/// Upper gate covers the torso/arms, lower gate the legs.
enum class GateTag : std::uint8_t { Upper = 0, Lower = 1 };

std::string_view to_string(ViewTag view) noexcept;
std::string_view to_string(GateTag gate) noexcept;
ViewTag parse_view(std::string_view text);

/// Sensor placement in the head frame.
///
/// Head frame: origin between the ears, +x towards the right ear, +y up, +z
/// forward. Sensor frame: +z boresight, +x azimuth baseline, +y elevation
/// baseline.
struct RadarPose {
  Eigen::Vector3d position_m = Eigen::Vector3d::Zero();
  /// Rotation taking sensor-frame vectors into the head frame.
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
  ViewTag view = ViewTag::Left;

  Eigen::Vector3d to_head(const Eigen::Vector3d& sensor_point) const {
    return orientation * sensor_point + position_m;
  }
  Eigen::Vector3d to_sensor(const Eigen::Vector3d& head_point) const {
    return orientation.transpose() * (head_point - position_m);
  }

  /// Throws std::invalid_argument unless orientation is a proper rotation.
  void validate() const;

  /// Default mounts: 8 cm outboard of each ear, boresight pointing down the body.
  /// The left pose is the mirror image of the right one about the sagittal plane.
  static RadarPose default_left();
  static RadarPose default_right();
  static RadarPose default_for(ViewTag view);
};

/// Simultaneous reading of the reference clock and a stream's local clock.
struct SyncRecord {
  Timestamp reference{0};
  Timestamp local{0};
  bool operator==(const SyncRecord&) const = default;
};

inline constexpr double kEarHalfWidth_m = 0.075;
inline constexpr double kEarToSensor_m = 0.08;

/// One radar frame of complex IF samples, laid out (rx, chirp, sample).
struct FrameCube {
  std::size_t rx = 0;
  std::size_t chirps = 0;
  std::size_t samples_per_chirp = 0;
  std::vector<cfloat> samples;
  Timestamp local_timestamp{0};
  std::optional<Timestamp> calibrated_timestamp;
  ViewTag view = ViewTag::Left;
  std::uint64_t frame_index = 0;
  /// Set by the simulator when a reflector lies beyond the unambiguous range.
  bool aliasing_warning = false;

  FrameCube() = default;
  explicit FrameCube(const RadarConfig& config);

  std::size_t index(std::size_t r, std::size_t chirp, std::size_t sample) const noexcept {
    return (r * chirps + chirp) * samples_per_chirp + sample;
  }
  cfloat& at(std::size_t r, std::size_t chirp, std::size_t sample) { return samples[index(r, chirp, sample)]; }
  const cfloat& at(std::size_t r, std::size_t chirp, std::size_t sample) const {
    return samples[index(r, chirp, sample)];
  }
  std::span<const cfloat> chirp(std::size_t r, std::size_t c) const {
    return {samples.data() + index(r, c, 0), samples_per_chirp};
  }
  bool matches(const RadarConfig& config) const noexcept;
};

/// Which processing stages produced a spectrum.
struct Provenance {
  bool mti_applied = false;
  bool clutter_removed = false;
  bool compensated = false;
  bool windowed = false;
  bool operator==(const Provenance&) const = default;
};

/// Per-chirp range spectrum, laid out (rx, chirp, range bin), positive bins only.
struct RangeSpectrum {
  std::size_t rx = 0;
  std::size_t chirps = 0;
  std::size_t range_bins = 0;
  std::vector<cdouble> data;
  Provenance provenance;

  std::size_t index(std::size_t r, std::size_t chirp, std::size_t bin) const noexcept {
    return (r * chirps + chirp) * range_bins + bin;
  }
  cdouble& at(std::size_t r, std::size_t chirp, std::size_t bin) { return data[index(r, chirp, bin)]; }
  const cdouble& at(std::size_t r, std::size_t chirp, std::size_t bin) const { return data[index(r, chirp, bin)]; }
};

/// Half-open range-bin interval [first, last).
struct BinWindow {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const noexcept { return last - first; }
  bool contains(std::size_t bin) const noexcept { return bin >= first && bin < last; }
  bool operator==(const BinWindow&) const = default;
};

/// Complex range-Doppler spectrum, laid out (range bin, Doppler bin, rx channel).
/// Doppler bin doppler_bins/2 is zero velocity.
struct RangeDopplerMap {
  std::size_t range_bins = 0;
  std::size_t doppler_bins = 0;
  std::size_t channels = 0;
  std::vector<cdouble> cells;
  double range_bin_width_m = 0.0;
  double velocity_bin_width_mps = 0.0;
  Provenance provenance;
  /// Range bins that carry data; a gated map zeroes everything outside.
  BinWindow active{0, 0};
  std::optional<GateTag> gate;
  /// (range bin, channel) rows left unscaled by energy compensation because they were all zero.
  std::vector<std::pair<std::size_t, std::size_t>> unscaled_rows;

  std::size_t index(std::size_t range, std::size_t doppler, std::size_t channel) const noexcept {
    return (range * doppler_bins + doppler) * channels + channel;
  }
  cdouble& at(std::size_t range, std::size_t doppler, std::size_t channel) {
    return cells[index(range, doppler, channel)];
  }
  const cdouble& at(std::size_t range, std::size_t doppler, std::size_t channel) const {
    return cells[index(range, doppler, channel)];
  }
  double range_m(std::size_t bin) const noexcept { return static_cast<double>(bin) * range_bin_width_m; }
  double velocity_mps(std::size_t doppler) const noexcept {
    return (static_cast<double>(doppler) - static_cast<double>(doppler_bins / 2)) * velocity_bin_width_mps;
  }
};

/// Beamformed magnitude field over (range bin, Doppler bin, azimuth beam, elevation beam).
///
/// Stored factored: the joint magnitude of a cell is the product of the
/// azimuth-pair and elevation-pair responses, so only those are kept.
struct BeamGrid {
  BinWindow range_window;
  std::size_t doppler_bins = 0;
  std::size_t beams = 0;
  std::vector<double> beam_angles_rad;
  /// Laid out (range - range_window.first, doppler, beam).
  std::vector<double> azimuth_response;
  std::vector<double> elevation_response;
  double range_bin_width_m = 0.0;
  double velocity_bin_width_mps = 0.0;
  std::optional<GateTag> gate;

  std::size_t response_index(std::size_t range, std::size_t doppler, std::size_t beam) const noexcept {
    return ((range - range_window.first) * doppler_bins + doppler) * beams + beam;
  }
  double magnitude(std::size_t range, std::size_t doppler, std::size_t az, std::size_t el) const noexcept {
    return azimuth_response[response_index(range, doppler, az)] *
           elevation_response[response_index(range, doppler, el)];
  }
  /// Materializes the full 4-D field, laid out (range, doppler, az, el).
  std::vector<double> dense() const;
};

struct RadarPoint {
  Eigen::Vector3d position_m = Eigen::Vector3d::Zero();
  double radial_velocity_mps = 0.0;
  double energy = 0.0;
  double range_m = 0.0;
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
  ViewTag view = ViewTag::Left;
  GateTag gate = GateTag::Upper;
  /// Repetition or sentinel inserted to reach the fixed point budget.
  bool padded = false;
  std::size_t range_bin = 0;
  std::size_t doppler_bin = 0;
  std::size_t azimuth_beam = 0;
  std::size_t elevation_beam = 0;

  bool operator==(const RadarPoint&) const = default;
};

struct PointCloud {
  std::vector<RadarPoint> points;
  std::size_t pad_count = 0;
  /// Number of (view, gate) selections that had no detections at all.
  std::size_t empty_selections = 0;
  bool degraded = false;

  std::size_t size() const noexcept { return points.size(); }
  bool operator==(const PointCloud&) const = default;
};

}  // namespace egoradar
