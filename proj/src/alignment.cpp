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

#include "egoradar/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace egoradar {

namespace {

Timestamp abs_diff(Timestamp a, Timestamp b) { return a > b ? a - b : b - a; }

void require_sorted(std::span<const Timestamp> t, const char* what) {
  if (!std::is_sorted(t.begin(), t.end())) {
    throw std::invalid_argument(fmt::format("{} timestamps are not non-decreasing", what));
  }
}

// For every element of `from`, index of the nearest element of `to` (earlier wins ties).
std::vector<std::size_t> nearest_indices(std::span<const Timestamp> from, std::span<const Timestamp> to) {
  std::vector<std::size_t> out(from.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    while (j + 1 < to.size() && abs_diff(to[j + 1], from[i]) < abs_diff(to[j], from[i])) ++j;
    out[i] = j;
  }
  return out;
}

Timestamp nearest_label(std::span<const Timestamp> labels, Timestamp t) {
  auto it = std::lower_bound(labels.begin(), labels.end(), t);
  if (it == labels.end()) return labels.back();
  if (it == labels.begin()) return *it;
  const Timestamp after = *it;
  const Timestamp before = *(it - 1);
  return abs_diff(before, t) <= abs_diff(after, t) ? before : after;
}

std::vector<Timestamp> calibrated_times(std::span<const FrameCube> stream, const char* what) {
  std::vector<Timestamp> out;
  out.reserve(stream.size());
  for (const auto& f : stream) {
    if (!f.calibrated_timestamp) {
      throw std::invalid_argument(fmt::format("{} stream frame {} is not calibrated", what, f.frame_index));
    }
    out.push_back(*f.calibrated_timestamp);
  }
  return out;
}

}  // namespace

ClockOffset compute_offset(double reference_time_s, double local_time_s, std::string stream) {
  if (!std::isfinite(reference_time_s) || !std::isfinite(local_time_s)) {
    throw std::invalid_argument("compute_offset: timestamps must be finite");
  }
  // Difference first so large epochs keep sub-nanosecond input precision out of the rounding.
  return {to_nanos(reference_time_s - local_time_s), std::move(stream)};
}

ClockOffset compute_offset(const SyncRecord& record, std::string stream) {
  return {record.reference - record.local, std::move(stream)};
}

std::vector<Timestamp> calibrate_timestamps(std::span<const Timestamp> local, const ClockOffset& offset) {
  std::vector<Timestamp> out(local.size());
  std::transform(local.begin(), local.end(), out.begin(), [&](Timestamp t) { return t + offset.offset; });
  return out;
}

void calibrate_timestamps(std::span<FrameCube> stream, const ClockOffset& offset) {
  for (auto& f : stream) f.calibrated_timestamp = f.local_timestamp + offset.offset;
}

std::vector<Timestamp> calibrate_timestamps(std::span<const Timestamp> local, std::span<const SyncRecord> records) {
  if (records.empty()) throw std::invalid_argument("calibrate_timestamps: no sync records");
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].local < records[i - 1].local) {
      throw std::invalid_argument("calibrate_timestamps: sync records out of order");
    }
  }
  std::vector<Timestamp> out(local.size());
  for (std::size_t i = 0; i < local.size(); ++i) {
    auto it = std::upper_bound(records.begin(), records.end(), local[i],
                               [](Timestamp t, const SyncRecord& r) { return t < r.local; });
    const SyncRecord& r = it == records.begin() ? records.front() : *(it - 1);
    out[i] = local[i] + (r.reference - r.local);
  }
  return out;
}

Pairing pair_views(std::span<const Timestamp> left, std::span<const Timestamp> right, Timestamp max_skew) {
  require_sorted(left, "left");
  require_sorted(right, "right");
  Pairing result;
  if (left.empty() || right.empty()) {
    result.unmatched_left = left.size();
    result.unmatched_right = right.size();
    return result;
  }

  const std::vector<std::size_t> left_to_right = nearest_indices(left, right);
  const std::vector<std::size_t> right_to_left = nearest_indices(right, left);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const std::size_t j = left_to_right[i];
    if (right_to_left[j] != i) continue;
    if (abs_diff(left[i], right[j]) > max_skew) {
      ++result.dropped;
      continue;
    }
    result.pairs.push_back({i, j, left[i], right[j]});
  }
  result.unmatched_left = left.size() - result.pairs.size();
  result.unmatched_right = right.size() - result.pairs.size();
  result.rate = static_cast<double>(result.pairs.size()) / static_cast<double>(std::min(left.size(), right.size()));
  return result;
}

Pairing pair_views(std::span<const FrameCube> left, std::span<const FrameCube> right, Timestamp max_skew) {
  const auto l = calibrated_times(left, "left");
  const auto r = calibrated_times(right, "right");
  return pair_views(std::span<const Timestamp>(l), std::span<const Timestamp>(r), max_skew);
}

std::vector<AlignedWindow> gate_windows(std::span<const FramePair> pairs,
                                        std::optional<std::span<const Timestamp>> labels,
                                        std::size_t frames_per_window, Timestamp tau) {
  if (frames_per_window == 0) throw std::invalid_argument("gate_windows: window length must be >= 1");
  if (labels) {
    require_sorted(*labels, "label");
    if (labels->empty()) throw std::invalid_argument("gate_windows: label stream is empty");
  }

  std::vector<AlignedWindow> windows;
  std::size_t run_start = 0;
  while (run_start < pairs.size()) {
    std::size_t run_end = run_start + 1;
    while (run_end < pairs.size() && pairs[run_end].left == pairs[run_end - 1].left + 1 &&
           pairs[run_end].right == pairs[run_end - 1].right + 1) {
      ++run_end;
    }
    for (std::size_t w = run_start; w + frames_per_window <= run_end; w += frames_per_window) {
      AlignedWindow window;
      double total_gap_ns = 0.0;
      for (std::size_t k = w; k < w + frames_per_window; ++k) {
        const FramePair& p = pairs[k];
        window.frames.push_back(p);
        Timestamp gap = p.skew();
        if (labels) {
          const Timestamp mid = p.left_time + (p.right_time - p.left_time) / 2;
          const Timestamp label = nearest_label(*labels, mid);
          window.label_times.push_back(label);
          gap = abs_diff(mid, label);
        }
        total_gap_ns += static_cast<double>(gap.count());
      }
      const double mean_ns = total_gap_ns / static_cast<double>(frames_per_window);
      window.mean_gap_s = mean_ns * 1e-9;
      window.accepted = !(mean_ns > static_cast<double>(tau.count()));
      windows.push_back(std::move(window));
    }
    run_start = run_end;
  }
  return windows;
}

PointCloud merge_views(const PointCloud& left, const PointCloud& right, const RadarConfig& config) {
  const std::size_t expected = config.points_per_view();
  if (left.size() != expected) {
    throw std::invalid_argument(fmt::format("merge_views: left view has {} points, expected {}", left.size(), expected));
  }
  if (right.size() != expected) {
    throw std::invalid_argument(
        fmt::format("merge_views: right view has {} points, expected {}", right.size(), expected));
  }
  PointCloud fused;
  fused.points.reserve(2 * expected);
  fused.points.insert(fused.points.end(), left.points.begin(), left.points.end());
  fused.points.insert(fused.points.end(), right.points.begin(), right.points.end());
  fused.pad_count = left.pad_count + right.pad_count;
  fused.empty_selections = left.empty_selections + right.empty_selections;
  fused.degraded = left.degraded || right.degraded;
  return fused;
}

FeatureTensor assemble_feature_tensor(std::span<const AlignedWindow> windows) {
  FeatureTensor tensor;
  if (windows.empty()) return tensor;

  const std::size_t frames = windows.front().frames.size();
  const std::size_t points = windows.front().fused.empty() ? 0 : windows.front().fused.front().size();
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const AlignedWindow& win = windows[w];
    if (!win.accepted) throw std::invalid_argument(fmt::format("assemble_feature_tensor: window {} was rejected", w));
    if (win.frames.size() != frames || win.fused.size() != frames) {
      throw std::invalid_argument(
          fmt::format("assemble_feature_tensor: window {} has {} frames and {} fused clouds, expected {}", w,
                      win.frames.size(), win.fused.size(), frames));
    }
    for (const auto& cloud : win.fused) {
      if (cloud.size() != points) {
        throw std::invalid_argument(
            fmt::format("assemble_feature_tensor: window {} has a cloud of {} points, expected {}", w, cloud.size(),
                        points));
      }
    }
  }

  tensor.shape = {static_cast<std::uint32_t>(windows.size()), static_cast<std::uint32_t>(frames),
                  static_cast<std::uint32_t>(points), static_cast<std::uint32_t>(kFeatureCount)};
  tensor.data.resize(windows.size() * frames * points * kFeatureCount);
  auto* out = tensor.data.data();
  for (const auto& win : windows) {
    for (const auto& cloud : win.fused) {
      for (const auto& p : cloud.points) {
        *out++ = static_cast<float>(p.position_m.x());
        *out++ = static_cast<float>(p.position_m.y());
        *out++ = static_cast<float>(p.position_m.z());
        *out++ = static_cast<float>(p.radial_velocity_mps);
        *out++ = static_cast<float>(p.energy);
        *out++ = static_cast<float>(p.range_m);
        *out++ = static_cast<float>(p.view);
        *out++ = static_cast<float>(p.gate);
      }
    }
  }
  return tensor;
}

}  // namespace egoradar
