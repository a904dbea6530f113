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
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace egoradar {

inline constexpr double kSpeedOfLight = 3.0e8;

/// Reflections closer than this are shoulder/acromion specular returns and are
/// never admitted into a range gate.
inline constexpr double kMinGateRange_m = 0.3;

struct RangeGate {
  double low_m = 0.0;
  double high_m = 0.0;
  bool operator==(const RangeGate&) const = default;
};

/// User-editable radar and processing parameters.
///
/// Field names are the keys of the text config format (see io/config_file.hpp).
/// The defaults describe the head-worn BGT60TR13C setup: a 60-63 GHz sweep with
/// 128 samples x 128 chirps per frame at 10 Hz.
struct RadarParams {
  double bandwidth_hz = 3.0e9;
  double chirp_duration_s = 700e-6;
  std::uint32_t samples_per_chirp = 128;
  std::uint32_t chirps_per_frame = 128;
  double frame_period_s = 0.1;
  double start_freq_hz = 60.0e9;
  double end_freq_hz = 63.0e9;
  std::uint32_t rx_count = 3;
  /// Element pitch inside each antenna pair; unset means half the center wavelength.
  std::optional<double> antenna_spacing_m;
  std::uint32_t beam_count = 31;
  double max_steer_rad = std::numbers::pi / 4.0;
  std::uint32_t point_budget = 32;
  double mti_alpha = 0.3;
  std::uint32_t mti_history = 5;
  double tau_s = 0.020;
  std::vector<RangeGate> gate_bounds_m = {{0.3, 0.9}, {0.9, 1.5}};
  double detect_threshold_db = -3.5;

  bool operator==(const RadarParams&) const = default;
};

/// Raised by validation; `field()` names the offending RadarParams member.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Validated, immutable radar configuration with cached derived quantities.
///
/// Only obtainable through validate_config(); a default-constructed instance
/// holds the validated defaults.
class RadarConfig {
 public:
  RadarConfig();

  const RadarParams& params() const noexcept { return params_; }

  std::size_t rx_count() const noexcept { return params_.rx_count; }
  std::size_t samples_per_chirp() const noexcept { return params_.samples_per_chirp; }
  std::size_t chirps_per_frame() const noexcept { return params_.chirps_per_frame; }
  std::size_t range_bins() const noexcept { return params_.samples_per_chirp / 2; }
  std::size_t doppler_bins() const noexcept { return params_.chirps_per_frame; }
  std::size_t beam_count() const noexcept { return params_.beam_count; }
  std::size_t point_budget() const noexcept { return params_.point_budget; }
  std::size_t gate_count() const noexcept { return params_.gate_bounds_m.size(); }
  /// Points per view after velocity selection: 2 * N_pn per gate.
  std::size_t points_per_view() const noexcept { return 2 * point_budget() * gate_count(); }

  double bandwidth_hz() const noexcept { return params_.bandwidth_hz; }
  double chirp_duration_s() const noexcept { return params_.chirp_duration_s; }
  double chirp_slope_hz_per_s() const noexcept { return params_.bandwidth_hz / params_.chirp_duration_s; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  double sample_interval_s() const noexcept { return 1.0 / sample_rate_hz_; }
  double center_frequency_hz() const noexcept { return center_frequency_hz_; }
  double wavelength_m() const noexcept { return wavelength_m_; }
  double antenna_spacing_m() const noexcept { return antenna_spacing_m_; }
  double range_resolution_m() const noexcept { return range_resolution_m_; }
  double max_range_m() const noexcept { return max_range_m_; }
  double velocity_resolution_mps() const noexcept { return velocity_resolution_mps_; }
  double max_velocity_mps() const noexcept { return max_velocity_mps_; }
  double max_steer_rad() const noexcept { return params_.max_steer_rad; }
  double beam_step_rad() const noexcept { return beam_step_rad_; }
  double beam_angle_rad(std::size_t beam) const noexcept;
  double burst_duration_s() const noexcept { return params_.chirp_duration_s * static_cast<double>(params_.chirps_per_frame); }
  std::chrono::nanoseconds frame_period() const noexcept { return frame_period_; }
  double frame_period_s() const noexcept { return params_.frame_period_s; }
  double mti_alpha() const noexcept { return params_.mti_alpha; }
  std::size_t mti_history() const noexcept { return params_.mti_history; }
  std::chrono::nanoseconds tau() const noexcept { return tau_; }
  double detect_threshold_db() const noexcept { return params_.detect_threshold_db; }
  const RangeGate& gate(std::size_t index) const { return params_.gate_bounds_m.at(index); }

  bool operator==(const RadarConfig&) const = default;

 private:
  friend RadarConfig validate_config(const RadarParams& params);
  explicit RadarConfig(const RadarParams& params);

  RadarParams params_;
  double sample_rate_hz_ = 0.0;
  double center_frequency_hz_ = 0.0;
  double wavelength_m_ = 0.0;
  double antenna_spacing_m_ = 0.0;
  double range_resolution_m_ = 0.0;
  double max_range_m_ = 0.0;
  double velocity_resolution_mps_ = 0.0;
  double max_velocity_mps_ = 0.0;
  double beam_step_rad_ = 0.0;
  std::chrono::nanoseconds frame_period_{0};
  std::chrono::nanoseconds tau_{0};
};

/// Checks every RadarParams invariant and computes the derived quantities.
/// Throws ConfigError naming the first violating field.
RadarConfig validate_config(const RadarParams& params);

/// Re-validation of an already validated config yields an identical value.
RadarConfig validate_config(const RadarConfig& config);

/// Seconds <-> integer nanoseconds at API boundaries.
std::chrono::nanoseconds to_nanos(double seconds);
double to_seconds(std::chrono::nanoseconds t) noexcept;

}  // namespace egoradar
