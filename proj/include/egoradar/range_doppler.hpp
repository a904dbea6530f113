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
#include <deque>
#include <vector>

#include "egoradar/config.hpp"
#include "egoradar/types.hpp"

namespace egoradar {

enum class MtiMode {
  /// b <- alpha x + (1 - alpha) b over the retained history, oldest first.
  ExponentialAverage,
  /// b = plain mean of the retained history.
  WindowMean,
};

/// Per-stream moving-target-indicator state. Single writer; feed frames in order.
class MtiState {
 public:
  MtiState() = default;
  explicit MtiState(const RadarConfig& config, MtiMode mode = MtiMode::ExponentialAverage);

  /// Background that the next frame will be compared against; empty before the first frame.
  const std::vector<cdouble>& background() const noexcept { return background_; }
  std::size_t frames_seen() const noexcept { return frames_seen_; }
  const std::deque<std::vector<cfloat>>& history() const noexcept { return history_; }
  MtiMode mode() const noexcept { return mode_; }

 private:
  friend FrameCube mti_filter(const FrameCube& frame, MtiState& state, const RadarConfig& config);
  void push(const std::vector<cfloat>& samples);

  std::size_t shape_ = 0;
  double alpha_ = 0.3;
  std::size_t capacity_ = 5;
  MtiMode mode_ = MtiMode::ExponentialAverage;
  std::vector<cdouble> background_;
  std::deque<std::vector<cfloat>> history_;
  std::size_t frames_seen_ = 0;
};

/// Subtracts the background estimated from the retained history, then adds the
/// raw frame to the history. The first frame seeds the background and comes
/// out as all zeros. Throws std::invalid_argument on a shape mismatch.
FrameCube mti_filter(const FrameCube& frame, MtiState& state, const RadarConfig& config);

/// FFT along the sample axis, keeping bins [0, Ns/2). Bin b is range b * c / (2B).
RangeSpectrum range_fft(const FrameCube& frame, bool window = true);

/// Subtracts, for every (rx, range bin), the complex mean over chirps.
RangeSpectrum clutter_removal(const RangeSpectrum& spectrum);

/// FFT along the chirp axis with the zero-velocity bin moved to Nc/2.
RangeDopplerMap doppler_fft(const RangeSpectrum& spectrum, const RadarConfig& config, bool window = true);

enum class Stage { Mti, RangeFft, ClutterRemoval, DopplerFft };

struct ProcessOptions {
  std::vector<Stage> stages{Stage::Mti, Stage::RangeFft, Stage::ClutterRemoval, Stage::DopplerFft};
  bool window = true;

  bool has(Stage stage) const noexcept;
  /// Canonical stage list with optional stages toggled.
  static ProcessOptions with(bool mti, bool clutter_removal, bool window = true);
};

/// Rejects stage lists that are out of canonical order, repeat a stage, or
/// lack either FFT. Throws std::invalid_argument.
void validate_options(const ProcessOptions& options);

/// mti_filter -> range_fft -> clutter_removal -> doppler_fft, with optional stages skipped.
RangeDopplerMap process_frame(const FrameCube& frame, MtiState& state, const RadarConfig& config,
                              const ProcessOptions& options = {});

}  // namespace egoradar
