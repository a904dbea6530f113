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

#include "egoradar/config.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

namespace egoradar {

namespace {

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

void require_finite(double value, const char* field) {
  require(std::isfinite(value), field, "must be finite");
}

bool is_power_of_two(std::uint32_t n) { return n >= 2 && std::has_single_bit(n); }

}  // namespace

std::chrono::nanoseconds to_nanos(double seconds) {
  if (!std::isfinite(seconds)) throw std::invalid_argument("timestamp is not finite");
  return std::chrono::nanoseconds(std::llround(seconds * 1e9));
}

double to_seconds(std::chrono::nanoseconds t) noexcept {
  return static_cast<double>(t.count()) * 1e-9;
}

RadarConfig::RadarConfig() : RadarConfig(validate_config(RadarParams{})) {}

RadarConfig::RadarConfig(const RadarParams& params) : params_(params) {
  sample_rate_hz_ = static_cast<double>(params.samples_per_chirp) / params.chirp_duration_s;
  center_frequency_hz_ = 0.5 * (params.start_freq_hz + params.end_freq_hz);
  wavelength_m_ = kSpeedOfLight / center_frequency_hz_;
  antenna_spacing_m_ = params.antenna_spacing_m.value_or(0.5 * wavelength_m_);
  range_resolution_m_ = kSpeedOfLight / (2.0 * params.bandwidth_hz);
  max_range_m_ = static_cast<double>(params.samples_per_chirp / 2) * range_resolution_m_;
  velocity_resolution_mps_ =
      wavelength_m_ / (2.0 * static_cast<double>(params.chirps_per_frame) * params.chirp_duration_s);
  max_velocity_mps_ = wavelength_m_ / (4.0 * params.chirp_duration_s);
  beam_step_rad_ = 2.0 * params.max_steer_rad / static_cast<double>(params.beam_count - 1);
  frame_period_ = to_nanos(params.frame_period_s);
  tau_ = to_nanos(params.tau_s);
}

double RadarConfig::beam_angle_rad(std::size_t beam) const noexcept {
  return -params_.max_steer_rad + beam_step_rad_ * static_cast<double>(beam);
}

RadarConfig validate_config(const RadarParams& p) {
  require_finite(p.bandwidth_hz, "bandwidth_hz");
  require(p.bandwidth_hz > 0.0, "bandwidth_hz", "must be positive");
  require_finite(p.chirp_duration_s, "chirp_duration_s");
  require(p.chirp_duration_s > 0.0, "chirp_duration_s", "must be positive");
  require(is_power_of_two(p.samples_per_chirp), "samples_per_chirp",
          fmt::format("must be a power of two >= 2, got {}", p.samples_per_chirp));
  require(is_power_of_two(p.chirps_per_frame), "chirps_per_frame",
          fmt::format("must be a power of two >= 2, got {}", p.chirps_per_frame));
  require_finite(p.frame_period_s, "frame_period_s");
  require(p.frame_period_s >= p.chirp_duration_s * p.chirps_per_frame, "frame_period_s",
          "must be at least chirps_per_frame * chirp_duration_s");

  require_finite(p.start_freq_hz, "start_freq_hz");
  require_finite(p.end_freq_hz, "end_freq_hz");
  require(p.start_freq_hz > 0.0, "start_freq_hz", "must be positive");
  require(p.end_freq_hz > p.start_freq_hz, "end_freq_hz", "must exceed start_freq_hz");
  require(std::abs((p.end_freq_hz - p.start_freq_hz) - p.bandwidth_hz) <= 1e-6 * p.bandwidth_hz,
          "bandwidth_hz", "must equal end_freq_hz - start_freq_hz");

  require(p.rx_count == 3, "rx_count",
          fmt::format("the L-shaped array has exactly 3 receive antennas, got {}", p.rx_count));
  if (p.antenna_spacing_m) {
    require_finite(*p.antenna_spacing_m, "antenna_spacing_m");
    require(*p.antenna_spacing_m > 0.0, "antenna_spacing_m", "must be positive");
  }

  require(p.beam_count >= 3 && p.beam_count % 2 == 1, "beam_count",
          fmt::format("must be odd and >= 3 so a broadside beam exists, got {}", p.beam_count));
  require_finite(p.max_steer_rad, "max_steer_rad");
  require(p.max_steer_rad > 0.0 && p.max_steer_rad < std::numbers::pi / 2.0, "max_steer_rad",
          "must lie in (0, pi/2)");
  require(p.point_budget >= 1, "point_budget", "must be at least 1");
  require_finite(p.mti_alpha, "mti_alpha");
  require(p.mti_alpha > 0.0 && p.mti_alpha <= 1.0, "mti_alpha", "must satisfy 0 < alpha <= 1");
  require(p.mti_history >= 1, "mti_history", "must be at least 1");
  require_finite(p.tau_s, "tau_s");
  require(p.tau_s > 0.0, "tau_s", "must be positive");
  require_finite(p.detect_threshold_db, "detect_threshold_db");
  require(p.detect_threshold_db <= 0.0, "detect_threshold_db", "must be <= 0 dB (relative to the maximum)");

  const double max_range = static_cast<double>(p.samples_per_chirp / 2) * kSpeedOfLight / (2.0 * p.bandwidth_hz);
  for (std::size_t i = 0; i < p.gate_bounds_m.size(); ++i) {
    const auto& g = p.gate_bounds_m[i];
    require(std::isfinite(g.low_m) && std::isfinite(g.high_m), "gate_bounds_m", "must be finite");
    require(g.low_m < g.high_m, "gate_bounds_m", "gate bounds not increasing");
    if (i > 0) {
      require(g.low_m >= p.gate_bounds_m[i - 1].high_m, "gate_bounds_m", "gate bounds not increasing");
    }
    require(g.low_m >= kMinGateRange_m - 1e-12, "gate_bounds_m",
            fmt::format("gate starts at {} m, below the {} m shoulder exclusion", g.low_m, kMinGateRange_m));
    require(g.high_m <= max_range + 1e-12, "gate_bounds_m",
            fmt::format("gate ends at {} m, beyond the {} m maximum range", g.high_m, max_range));
  }

  require(p.gate_bounds_m.size() == 2, "gate_bounds_m",
          fmt::format("expected an upper-body and a lower-body gate, got {} gate(s)", p.gate_bounds_m.size()));

  return RadarConfig(p);
}

RadarConfig validate_config(const RadarConfig& config) { return validate_config(config.params()); }

}  // namespace egoradar
