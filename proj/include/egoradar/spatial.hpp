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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "egoradar/config.hpp"
#include "egoradar/types.hpp"

namespace egoradar {

/// Rescales every (range bin, channel) row so its mean magnitude over Doppler
/// equals the channel-wide mean of the row means. Phases are untouched.
/// All-zero rows keep factor 1, are excluded from the channel mean and are
/// listed in `unscaled_rows`.
RangeDopplerMap energy_compensation(const RangeDopplerMap& rd);

/// Half-open bin interval of a gate: bins b with low <= b * dr < high.
BinWindow gate_bins(const RadarConfig& config, GateTag gate);

/// Zeroes every range bin outside the gate and records the gate window.
/// Throws std::out_of_range if the gate does not fit inside the map.
RangeDopplerMap range_gate(const RangeDopplerMap& rd, GateTag gate, const RadarConfig& config);

/// Steering weights, rows = antenna index within a pair, columns = beams:
/// W(i, b) = exp(j 2 pi (i d / lambda) sin(theta_b)).
using WeightMatrix = Eigen::MatrixXcd;
WeightMatrix dbf_weights(const RadarConfig& config);

/// theta_b = -theta_max + 2 theta_max / (N_beam - 1) * b.
std::vector<double> beam_angles(const RadarConfig& config);

/// Coherent two-element combination for the azimuth pair (rx 0, 1) and the
/// elevation pair (rx 0, 2), y_b = |x_0 conj(W(0,b)) + x_1 conj(W(1,b))|.
/// Only the map's active range window is beamformed.
BeamGrid beamform(const RangeDopplerMap& rd, const WeightMatrix& weights, const RadarConfig& config);

struct Detection {
  std::size_t range_bin = 0;
  std::size_t doppler_bin = 0;
  std::size_t azimuth_beam = 0;
  std::size_t elevation_beam = 0;
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
  double energy = 0.0;
  bool operator==(const Detection&) const = default;
};

/// Cells with 20 log10(mag / max) above the configured threshold. The
/// reference is the largest magnitude in the grid. An all-zero grid yields no
/// detections.
std::vector<Detection> detect_points(const BeamGrid& grid, const RadarConfig& config);

struct Selection {
  std::vector<Detection> points;
  std::size_t pad_count = 0;
  bool empty = false;
};

/// Keeps the N_pn most positive and then the N_pn most negative velocities.
/// Ties: higher energy, then lower range, then (azimuth, elevation) beam index.
/// Fewer than 2 N_pn candidates are padded with the highest-energy one; with no
/// candidates the output is 2 N_pn all-zero sentinels.
Selection select_by_velocity(std::span<const Detection> candidates, const RadarConfig& config);

/// Sensor direction (sin az cos el, sin el, cos az cos el) * range, moved into the
/// head frame. Throws std::domain_error for angles outside +-theta_max.
Eigen::Vector3d project_to_cartesian(double range_m, double azimuth_rad, double elevation_rad,
                                     const RadarPose& pose, const RadarConfig& config);

/// range_gate -> beamform -> detect_points -> select_by_velocity -> project for
/// both gates; returns exactly points_per_view() points tagged with view and gate.
PointCloud extract_point_cloud(const RangeDopplerMap& rd, const RadarPose& pose, const RadarConfig& config);
PointCloud extract_point_cloud(const RangeDopplerMap& rd, const RadarPose& pose, const RadarConfig& config,
                               const WeightMatrix& weights);

}  // namespace egoradar
