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
 * \file pipeline.hpp
 * \brief Per-view frame processing: range-Doppler map, compensation, points in the head frame.
 */

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "egoradar/alignment.hpp"
#include "egoradar/config.hpp"
#include "egoradar/range_doppler.hpp"
#include "egoradar/spatial.hpp"
#include "egoradar/types.hpp"

namespace egoradar {

struct PipelineOptions {
  ProcessOptions process;
  bool compensation = true;
  MtiMode mti_mode = MtiMode::ExponentialAverage;

  static PipelineOptions with(bool mti, bool clutter_removal, bool compensation, bool window = true);
  Provenance provenance() const;
};

/// Stateful processor for one radar stream. Frames must be fed in order.
class ViewProcessor {
 public:
  ViewProcessor(const RadarConfig& config, const RadarPose& pose, PipelineOptions options = {});

  /// Replaces the beamforming weights (a 2 x beam_count matrix).
  void set_weights(WeightMatrix weights);
  const WeightMatrix& weights() const noexcept { return weights_; }

  /// Range-Doppler map after the configured stages and optional compensation.
  RangeDopplerMap range_doppler(const FrameCube& frame);
  PointCloud process(const FrameCube& frame);

  void reset();
  const RadarConfig& config() const noexcept { return config_; }
  const RadarPose& pose() const noexcept { return pose_; }
  const PipelineOptions& options() const noexcept { return options_; }

 private:
  RadarConfig config_;
  RadarPose pose_;
  PipelineOptions options_;
  MtiState mti_;
  WeightMatrix weights_;
};

/// One synchronized stream as read from a capture or produced by the simulator.
struct StreamInput {
  std::span<const FrameCube> frames;
  SyncRecord sync;
  RadarPose pose;
};

struct SessionSettings {
  PipelineOptions pipeline;
  Timestamp max_skew = kDefaultMaxSkew;
  std::size_t window_frames = kDefaultWindowFrames;
  /// Defaults to the config's tau.
  std::optional<Timestamp> tau;
  /// Replaces the default beamforming weights for both views.
  std::optional<WeightMatrix> weights;
  /// Optional third stream (e.g. camera labels) on the reference clock.
  std::optional<std::vector<Timestamp>> label_times;
  /// Worker threads for the two streams; 1 processes them one after the other.
  unsigned threads = 2;
};

struct FusedFrame {
  FramePair pair;
  std::uint64_t left_index = 0;
  std::uint64_t right_index = 0;
  /// Midpoint of the two calibrated timestamps.
  Timestamp time{0};
  PointCloud cloud;
};

struct SessionResult {
  std::vector<Timestamp> left_times;
  std::vector<Timestamp> right_times;
  Pairing pairing;
  std::vector<FusedFrame> fused;
  /// Windows with their fused clouds attached.
  std::vector<AlignedWindow> windows;
  std::size_t accepted_windows = 0;
  std::size_t pad_count = 0;
  std::size_t degraded_frames = 0;
  std::size_t empty_selections = 0;
  Provenance provenance;

  double window_accept_rate() const noexcept {
    return windows.empty() ? 0.0 : static_cast<double>(accepted_windows) / static_cast<double>(windows.size());
  }
  std::vector<AlignedWindow> accepted() const;
};

/// Calibrates both streams with their sync records, processes every frame of
/// each stream in order, pairs them, fuses paired clouds and cuts windows.
SessionResult process_session(const RadarConfig& config, const StreamInput& left, const StreamInput& right,
                              const SessionSettings& settings = {});

}  // namespace egoradar
