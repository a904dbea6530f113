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


#include "egoradar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

namespace egoradar {

Tolerances Tolerances::from(const RadarConfig& config) {
  Tolerances t;
  t.range_m = config.range_resolution_m();
  t.velocity_mps = std::ceil(config.velocity_resolution_mps() * 1000.0 - 1e-9) / 1000.0;
  t.angle_rad = config.beam_step_rad();
  return t;
}

std::string VerifyReport::verdict() const {
  if (no_truth()) return "NO-TRUTH";
  return passed() ? "PASS" : "FAIL";
}

bool in_gate(const ScattererTruth& truth, const RadarConfig& config) {
  if (!truth.in_fov) return false;
  for (std::size_t g = 0; g < config.gate_count(); ++g) {
    if (truth.range_m >= config.gate(g).low_m && truth.range_m < config.gate(g).high_m) return true;
  }
  return false;
}

namespace {

struct Errors {
  double range = 0, velocity = 0, azimuth = 0, elevation = 0;
  double worst(const Tolerances& t) const {
    return std::max({range / t.range_m, velocity / t.velocity_mps, azimuth / t.angle_rad, elevation / t.angle_rad});
  }
};

void accumulate(AxisError& axis, double value, std::size_t n) {
  axis.mean_abs += (value - axis.mean_abs) / static_cast<double>(n);
  axis.max_abs = std::max(axis.max_abs, value);
}

}  // namespace

VerifyReport verify_session(const Session& session, const SessionResult& result, const RadarConfig& config,
                            const Tolerances& tolerances, std::size_t warmup_frames) {
  std::map<std::pair<ViewTag, std::uint64_t>, std::vector<const ScattererTruth*>> truth;
  for (const auto& rec : session.truth) {
    if (in_gate(rec.truth, config)) truth[{rec.view, rec.frame_index}].push_back(&rec.truth);
  }

  VerifyReport report;
  report.tolerances = tolerances;
  constexpr double kSlack = 1e-9;
  for (const auto& frame : result.fused) {
    for (ViewTag view : {ViewTag::Left, ViewTag::Right}) {
      const std::uint64_t index = view == ViewTag::Left ? frame.left_index : frame.right_index;
      if (index < warmup_frames) continue;
      const auto it = truth.find({view, index});
      if (it == truth.end()) continue;

      ++report.frames_checked;
      const RadarPoint* best = nullptr;
      for (const auto& p : frame.cloud.points) {
        if (p.view != view || p.padded) continue;
        if (!best || p.energy > best->energy) best = &p;
      }
      if (!best) {
        ++report.frames_without_points;
        continue;
      }

      Errors chosen;
      double chosen_score = std::numeric_limits<double>::infinity();
      for (const ScattererTruth* t : it->second) {
        const Errors e{std::abs(best->range_m - t->range_m), std::abs(best->radial_velocity_mps - t->radial_velocity_mps),
                       std::abs(best->azimuth_rad - t->azimuth_rad), std::abs(best->elevation_rad - t->elevation_rad)};
        if (const double s = e.worst(tolerances); s < chosen_score) {
          chosen_score = s;
          chosen = e;
        }
      }
      const std::size_t n = report.frames_checked - report.frames_without_points;
      accumulate(report.range_m, chosen.range, n);
      accumulate(report.velocity_mps, chosen.velocity, n);
      accumulate(report.azimuth_rad, chosen.azimuth, n);
      accumulate(report.elevation_rad, chosen.elevation, n);
      if (chosen.range <= tolerances.range_m + kSlack && chosen.velocity <= tolerances.velocity_mps + kSlack &&
          chosen.azimuth <= tolerances.angle_rad + kSlack && chosen.elevation <= tolerances.angle_rad + kSlack) {
        ++report.frames_passed;
      }
    }
  }
  return report;
}

}  // namespace egoradar
