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

#include "egoradar/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

namespace egoradar {

std::string_view to_string(ViewTag view) noexcept { return view == ViewTag::Left ? "left" : "right"; }

std::string_view to_string(GateTag gate) noexcept { return gate == GateTag::Upper ? "upper" : "lower"; }

ViewTag parse_view(std::string_view text) {
  if (text == "left") return ViewTag::Left;
  if (text == "right") return ViewTag::Right;
  throw std::invalid_argument("unknown view '" + std::string(text) + "' (expected left or right)");
}

void RadarPose::validate() const {
  const Eigen::Matrix3d gram = orientation.transpose() * orientation;
  if (!gram.isApprox(Eigen::Matrix3d::Identity(), 1e-9)) {
    throw std::invalid_argument("pose orientation is not orthonormal");
  }
  if (std::abs(orientation.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument("pose orientation has determinant != +1");
  }
  if (!position_m.allFinite()) throw std::invalid_argument("pose position is not finite");
}

RadarPose RadarPose::default_right() {
  RadarPose pose;
  pose.view = ViewTag::Right;
  pose.position_m = Eigen::Vector3d(kEarHalfWidth_m + kEarToSensor_m, 0.0, 0.0);
  // Azimuth baseline along head +z, elevation baseline pointing inwards, boresight down.
  pose.orientation.col(0) = Eigen::Vector3d(0.0, 0.0, 1.0);
  pose.orientation.col(1) = Eigen::Vector3d(-1.0, 0.0, 0.0);
  pose.orientation.col(2) = Eigen::Vector3d(0.0, -1.0, 0.0);
  return pose;
}

RadarPose RadarPose::default_left() {
  // Mirror of the right mount: reflect through x = 0, then flip the azimuth
  // axis so the rotation stays proper.
  const RadarPose right = default_right();
  const Eigen::Matrix3d mirror = Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
  const Eigen::Matrix3d flip_azimuth = Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
  RadarPose pose;
  pose.view = ViewTag::Left;
  pose.position_m = mirror * right.position_m;
  pose.orientation = mirror * right.orientation * flip_azimuth;
  return pose;
}

RadarPose RadarPose::default_for(ViewTag view) {
  return view == ViewTag::Left ? default_left() : default_right();
}

FrameCube::FrameCube(const RadarConfig& config)
    : rx(config.rx_count()),
      chirps(config.chirps_per_frame()),
      samples_per_chirp(config.samples_per_chirp()),
      samples(rx * chirps * samples_per_chirp) {}

bool FrameCube::matches(const RadarConfig& config) const noexcept {
  return rx == config.rx_count() && chirps == config.chirps_per_frame() &&
         samples_per_chirp == config.samples_per_chirp() && samples.size() == rx * chirps * samples_per_chirp;
}

std::vector<double> BeamGrid::dense() const {
  std::vector<double> out(range_window.size() * doppler_bins * beams * beams);
  std::size_t k = 0;
  for (std::size_t r = range_window.first; r < range_window.last; ++r) {
    for (std::size_t d = 0; d < doppler_bins; ++d) {
      for (std::size_t a = 0; a < beams; ++a) {
        for (std::size_t e = 0; e < beams; ++e) out[k++] = magnitude(r, d, a, e);
      }
    }
  }
  return out;
}

}  // namespace egoradar
