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


// Helpers shared by the unit tests: independent oracles and scene builders.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "egoradar/config.hpp"
#include "egoradar/scene.hpp"
#include "egoradar/types.hpp"

namespace egoradar::testing {

inline constexpr double kPi = std::numbers::pi;
inline double deg(double d) { return d * kPi / 180.0; }

/// O(n^2) forward DFT, unnormalized, X[k] = sum x[n] exp(-2 pi j k n / N).
inline std::vector<std::complex<double>> brute_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = -2.0 * kPi * static_cast<double>((k * i) % n) / static_cast<double>(n);
      acc += x[i] * std::polar(1.0, phase);
    }
    out[k] = acc;
  }
  return out;
}

template <typename T>
std::size_t argmax_abs(const std::vector<T>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  return best;
}

/// Identity-pose sensor at the origin looking along +z.
inline RadarPose boresight_pose(ViewTag view = ViewTag::Right) {
  RadarPose pose;
  pose.view = view;
  return pose;
}

inline Eigen::Vector3d sensor_point(double range, double az, double el) {
  return range * Eigen::Vector3d(std::sin(az) * std::cos(el), std::sin(el), std::cos(az) * std::cos(el));
}

/// Scatterer at (range, az, el) of `pose` at time t0, moving radially at `radial_mps`.
inline Scatterer radial_mover(const RadarPose& pose, double range, double az, double el, double radial_mps,
                              double t0 = 0.0, double reflectivity = 1.0) {
  const Eigen::Vector3d dir = sensor_point(1.0, az, el);
  const Eigen::Vector3d head = pose.to_head(range * dir);
  const Eigen::Vector3d velocity = pose.orientation * (radial_mps * dir);
  return Scatterer::moving(head, velocity, t0, t0 - 10.0, t0 + 10.0, reflectivity);
}

inline ScatterScene scene_of(std::vector<Scatterer> scatterers) {
  ScatterScene s;
  s.scatterers = std::move(scatterers);
  return s;
}

/// Per-process scratch directory, removed by the caller if desired.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("egoradar_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double db(double ratio) { return 20.0 * std::log10(ratio); }

}  // namespace egoradar::testing
