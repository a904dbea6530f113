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
 * \file scene.hpp
 * \brief Synthetic FMCW echoes from moving point scatterers, plus analytic truth.
 *
 * Signal model per scatterer, chirp k, sample n and receive antenna i:
 *
 *   A * exp(j * (2 pi f_IF n / fs + 4 pi R_k f_start / c + phi_i))
 *
 * with f_IF = (B / Tc)(2 R_k / c), f_start the sweep start frequency and R_k the range at the start of chirp k
 * (stop-and-go). Antenna 0 is the shared corner of the L, antenna 1 forms the
 * azimuth pair with it and antenna 2 the elevation pair; phi_1 = 2 pi (d/lambda)
 * sin(az) and phi_2 = 2 pi (d/lambda) sin(el). The two baselines are treated as
 * ideal, decoupled axes: the azimuth pair sees only the azimuth angle.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "egoradar/config.hpp"
#include "egoradar/types.hpp"

namespace egoradar {

struct Waypoint {
  double time_s = 0.0;
  Eigen::Vector3d position_m = Eigen::Vector3d::Zero();
  double reflectivity = 1.0;
};

/// Point reflector following a piecewise-linear trajectory in the head frame.
/// Before the first and after the last waypoint the scatterer holds still.
struct Scatterer {
  std::string name;
  std::vector<Waypoint> waypoints;

  Eigen::Vector3d position_at(double t) const;
  double reflectivity_at(double t) const;

  static Scatterer stationary(const Eigen::Vector3d& position, double reflectivity = 1.0, std::string name = {});
  /// Constant-velocity motion through `position` at time `t0`, valid on [t_begin, t_end].
  static Scatterer moving(const Eigen::Vector3d& position, const Eigen::Vector3d& velocity, double t0,
                          double t_begin, double t_end, double reflectivity = 1.0, std::string name = {});
};

struct ClockModel {
  /// Local clock minus true time.
  double offset_s = 0.0;
  /// Standard deviation of the per-frame acquisition-time jitter.
  double jitter_s = 0.0;
};

struct ScatterScene {
  std::vector<Scatterer> scatterers;
  ClockModel left_clock;
  ClockModel right_clock;

  const ClockModel& clock(ViewTag view) const noexcept { return view == ViewTag::Left ? left_clock : right_clock; }
  ScatterScene mirrored() const;
  /// Throws std::invalid_argument on empty trajectories, unordered or non-finite
  /// waypoints and negative reflectivity.
  void validate() const;
};

struct SimulationOptions {
  /// Per-sample standard deviation of complex white Gaussian noise (|n|^2 has this variance).
  double noise_std = 0.0;
  /// Scale amplitude by 1/R^2.
  bool path_loss = true;
  /// Emit the real part only (Hermitian spectrum).
  bool real_if = false;
  std::uint64_t seed = 0;
  /// True time of frame 0.
  double epoch_s = 0.0;
};

struct ScattererTruth {
  std::size_t scatterer = 0;
  double range_m = 0.0;
  double radial_velocity_mps = 0.0;
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
  /// Reflectivity at that instant, before path loss.
  double amplitude = 0.0;
  /// Both angles within the steering limit.
  bool in_fov = false;
};

/// Synthesizes one frame whose first chirp starts at `frame_time_s` (true time).
/// The local timestamp is set to the frame time; simulate_session overwrites it.
FrameCube synthesize_frame(const ScatterScene& scene, const RadarPose& pose, const RadarConfig& config,
                           double frame_time_s, const SimulationOptions& options = {},
                           std::uint64_t frame_index = 0);

/// Sensor-frame range, radial velocity (central difference over one chirp) and
/// angles of every scatterer at `time_s`.
std::vector<ScattererTruth> scatterer_truth(const ScatterScene& scene, const RadarPose& pose,
                                            const RadarConfig& config, double time_s);

struct TruthRecord {
  ViewTag view = ViewTag::Left;
  std::uint64_t frame_index = 0;
  /// True acquisition time of the first chirp.
  double acquisition_time_s = 0.0;
  /// Burst center, the instant the truth below refers to.
  double truth_time_s = 0.0;
  ScattererTruth truth;
};

struct Session {
  std::vector<FrameCube> left;
  std::vector<FrameCube> right;
  SyncRecord left_sync;
  SyncRecord right_sync;
  std::vector<TruthRecord> truth;

  std::vector<FrameCube>& stream(ViewTag view) { return view == ViewTag::Left ? left : right; }
  const std::vector<FrameCube>& stream(ViewTag view) const { return view == ViewTag::Left ? left : right; }
  const SyncRecord& sync(ViewTag view) const { return view == ViewTag::Left ? left_sync : right_sync; }
};

/// Time at which truth is compared with a processed frame: the burst center.
double burst_center_s(const RadarConfig& config, double acquisition_time_s);

/// Two streams at 1/Tf frames per second. Frame k of a stream is acquired at
/// epoch + k Tf + jitter and stamped with that time plus the clock offset.
/// Jitter is clamped to +-0.45 Tf so local timestamps stay monotonic.
Session simulate_session(const ScatterScene& scene, const RadarPose& left, const RadarPose& right,
                         const RadarConfig& config, double duration_s, const SimulationOptions& options = {});

/// Number of frames simulate_session produces for `duration_s`.
std::size_t session_frame_count(const RadarConfig& config, double duration_s);

}  // namespace egoradar
