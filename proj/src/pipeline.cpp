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


#include "egoradar/pipeline.hpp"

#include <future>
#include <map>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace egoradar {

PipelineOptions PipelineOptions::with(bool mti, bool clutter_removal, bool compensation, bool window) {
  PipelineOptions opts;
  opts.process = ProcessOptions::with(mti, clutter_removal, window);
  opts.compensation = compensation;
  return opts;
}

Provenance PipelineOptions::provenance() const {
  Provenance p;
  p.mti_applied = process.has(Stage::Mti);
  p.clutter_removed = process.has(Stage::ClutterRemoval);
  p.compensated = compensation;
  p.windowed = process.window;
  return p;
}

ViewProcessor::ViewProcessor(const RadarConfig& config, const RadarPose& pose, PipelineOptions options)
    : config_(validate_config(config)),
      pose_(pose),
      options_(std::move(options)),
      mti_(config_, options_.mti_mode),
      weights_(dbf_weights(config_)) {
  pose_.validate();
  validate_options(options_.process);
}

void ViewProcessor::set_weights(WeightMatrix weights) {
  if (weights.rows() != 2 || static_cast<std::size_t>(weights.cols()) != config_.beam_count()) {
    throw std::invalid_argument("ViewProcessor: weight matrix must be 2 x beam_count");
  }
  weights_ = std::move(weights);
}

RangeDopplerMap ViewProcessor::range_doppler(const FrameCube& frame) {
  RangeDopplerMap rd = process_frame(frame, mti_, config_, options_.process);
  if (options_.compensation) rd = energy_compensation(rd);
  return rd;
}

PointCloud ViewProcessor::process(const FrameCube& frame) {
  return extract_point_cloud(range_doppler(frame), pose_, config_, weights_);
}

void ViewProcessor::reset() { mti_ = MtiState(config_, options_.mti_mode); }

std::vector<AlignedWindow> SessionResult::accepted() const {
  std::vector<AlignedWindow> out;
  for (const auto& w : windows) {
    if (w.accepted) out.push_back(w);
  }
  return out;
}

namespace {

std::vector<PointCloud> process_stream(const RadarConfig& config, const StreamInput& input,
                                       const SessionSettings& settings) {
  ViewProcessor proc(config, input.pose, settings.pipeline);
  if (settings.weights) proc.set_weights(*settings.weights);
  std::vector<PointCloud> clouds;
  clouds.reserve(input.frames.size());
  for (const auto& frame : input.frames) {
    if (frame.view != input.pose.view) {
      throw std::invalid_argument(fmt::format("{} stream contains a {} frame", to_string(input.pose.view), to_string(frame.view)));
    }
    clouds.push_back(proc.process(frame));
  }
  return clouds;
}

std::vector<Timestamp> calibrated(const StreamInput& input) {
  std::vector<Timestamp> local;
  local.reserve(input.frames.size());
  for (const auto& f : input.frames) local.push_back(f.local_timestamp);
  return calibrate_timestamps(local, compute_offset(input.sync, std::string(to_string(input.pose.view))));
}

}  // namespace

SessionResult process_session(const RadarConfig& config, const StreamInput& left, const StreamInput& right,
                              const SessionSettings& settings) {
  if (left.pose.view != ViewTag::Left || right.pose.view != ViewTag::Right) {
    throw std::invalid_argument("process_session: poses must be tagged left and right");
  }
  for (const auto* in : {&left, &right}) {
    for (const auto& f : in->frames) {
      if (!f.matches(config)) {
        throw std::invalid_argument(fmt::format("{} frame {} does not match the config", to_string(in->pose.view), f.frame_index));
      }
    }
  }

  SessionResult result;
  result.provenance = settings.pipeline.provenance();
  result.left_times = calibrated(left);
  result.right_times = calibrated(right);
  result.pairing = pair_views(std::span<const Timestamp>(result.left_times), std::span<const Timestamp>(result.right_times),
                              settings.max_skew);

  std::vector<PointCloud> left_clouds;
  std::vector<PointCloud> right_clouds;
  if (settings.threads > 1) {
    auto right_job = std::async(std::launch::async, [&] { return process_stream(config, right, settings); });
    left_clouds = process_stream(config, left, settings);
    right_clouds = right_job.get();
  } else {
    left_clouds = process_stream(config, left, settings);
    right_clouds = process_stream(config, right, settings);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> fused_index;
  for (const auto& p : result.pairing.pairs) {
    FusedFrame f;
    f.pair = p;
    f.left_index = left.frames[p.left].frame_index;
    f.right_index = right.frames[p.right].frame_index;
    f.time = p.left_time + (p.right_time - p.left_time) / 2;
    f.cloud = merge_views(left_clouds[p.left], right_clouds[p.right], config);
    result.pad_count += f.cloud.pad_count;
    result.empty_selections += f.cloud.empty_selections;
    if (f.cloud.degraded) ++result.degraded_frames;
    fused_index[{p.left, p.right}] = result.fused.size();
    result.fused.push_back(std::move(f));
  }

  std::optional<std::span<const Timestamp>> labels;
  if (settings.label_times) labels = std::span<const Timestamp>(*settings.label_times);
  result.windows = gate_windows(result.pairing.pairs, labels, settings.window_frames, settings.tau.value_or(config.tau()));
  for (auto& w : result.windows) {
    for (const auto& p : w.frames) w.fused.push_back(result.fused[fused_index.at({p.left, p.right})].cloud);
    if (w.accepted) ++result.accepted_windows;
  }
  return result;
}

}  // namespace egoradar
