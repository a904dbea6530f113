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
 * \file verify.hpp
 * \brief Compares recovered points with simulator truth.
 *
 * For every fused frame and view, the strongest non-padded point of that view
 * is matched against the in-gate, in-FOV scatterers of the same frame. A
 * frame passes when range, radial velocity, azimuth and elevation all lie
 * within tolerance of one scatterer.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "egoradar/config.hpp"
#include "egoradar/pipeline.hpp"
#include "egoradar/scene.hpp"

namespace egoradar {

struct Tolerances {
  double range_m = 0.05;
  double velocity_mps = 0.028;
  double angle_rad = 0.0;
  double min_pass_rate = 0.98;

  /// One range bin, one Doppler bin (rounded up to the millimetre per second) and one beam step.
  static Tolerances from(const RadarConfig& config);
};

struct AxisError {
  double mean_abs = 0.0;
  double max_abs = 0.0;
};

struct VerifyReport {
  std::size_t frames_checked = 0;
  std::size_t frames_passed = 0;
  /// Checked frames whose view produced no non-padded point.
  std::size_t frames_without_points = 0;
  AxisError range_m;
  AxisError velocity_mps;
  AxisError azimuth_rad;
  AxisError elevation_rad;
  Tolerances tolerances;

  bool no_truth() const noexcept { return frames_checked == 0; }
  double pass_rate() const noexcept {
    return frames_checked ? static_cast<double>(frames_passed) / static_cast<double>(frames_checked) : 0.0;
  }
  bool passed() const noexcept { return !no_truth() && pass_rate() >= tolerances.min_pass_rate; }
  /// "PASS", "FAIL" or "NO-TRUTH".
  std::string verdict() const;
};

/// True when the scatterer lies inside one of the config's range gates and the field of view.
bool in_gate(const ScattererTruth& truth, const RadarConfig& config);

/// Skips frames whose index is below `warmup_frames` (the MTI background is
/// still forming there).
VerifyReport verify_session(const Session& session, const SessionResult& result, const RadarConfig& config,
                            const Tolerances& tolerances, std::size_t warmup_frames = 1);

}  // namespace egoradar
