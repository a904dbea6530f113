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

#include "egoradar/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace egoradar {

namespace {

constexpr double kAngleSlack = 1e-9;

// Velocity descending for the "highest" half, ascending for the "lowest" half;
// all remaining keys are shared so the order is total and deterministic.
bool tie_break(const Detection& a, const Detection& b) {
  if (a.energy != b.energy) return a.energy > b.energy;
  if (a.range_bin != b.range_bin) return a.range_bin < b.range_bin;
  if (a.azimuth_beam != b.azimuth_beam) return a.azimuth_beam < b.azimuth_beam;
  if (a.elevation_beam != b.elevation_beam) return a.elevation_beam < b.elevation_beam;
  return a.doppler_bin < b.doppler_bin;
}

bool fastest_receding_first(const Detection& a, const Detection& b) {
  if (a.velocity_mps != b.velocity_mps) return a.velocity_mps > b.velocity_mps;
  return tie_break(a, b);
}

bool fastest_approaching_first(const Detection& a, const Detection& b) {
  if (a.velocity_mps != b.velocity_mps) return a.velocity_mps < b.velocity_mps;
  return tie_break(a, b);
}

}  // namespace

RangeDopplerMap energy_compensation(const RangeDopplerMap& rd) {
  RangeDopplerMap out = rd;
  out.unscaled_rows.clear();
  const double inv_doppler = 1.0 / static_cast<double>(rd.doppler_bins);
  std::vector<double> row_mean(rd.range_bins);

  for (std::size_t c = 0; c < rd.channels; ++c) {
    double total = 0.0;
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < rd.range_bins; ++r) {
      double sum = 0.0;
      for (std::size_t d = 0; d < rd.doppler_bins; ++d) sum += std::abs(rd.at(r, d, c));
      row_mean[r] = sum * inv_doppler;
      if (row_mean[r] > 0.0) {
        total += row_mean[r];
        ++nonzero;
      }
    }
    const double channel_mean = nonzero > 0 ? total / static_cast<double>(nonzero) : 0.0;
    for (std::size_t r = 0; r < rd.range_bins; ++r) {
      if (row_mean[r] == 0.0) {
        out.unscaled_rows.emplace_back(r, c);
        continue;
      }
      const double scale = channel_mean / row_mean[r];
      for (std::size_t d = 0; d < rd.doppler_bins; ++d) out.at(r, d, c) *= scale;
    }
  }
  out.provenance.compensated = true;
  return out;
}

BinWindow gate_bins(const RadarConfig& config, GateTag gate) {
  const std::size_t index = static_cast<std::size_t>(gate);
  if (index >= config.gate_count()) throw std::out_of_range("gate index outside configured gates");
  const RangeGate& g = config.gate(index);
  const double dr = config.range_resolution_m();
  const auto first = static_cast<std::size_t>(std::ceil(std::max(g.low_m, kMinGateRange_m) / dr - 1e-9));
  const auto last = static_cast<std::size_t>(std::ceil(g.high_m / dr - 1e-9));
  return {first, std::max(first, last)};
}

RangeDopplerMap range_gate(const RangeDopplerMap& rd, GateTag gate, const RadarConfig& config) {
  const BinWindow w = gate_bins(config, gate);
  if (w.last > rd.range_bins) {
    throw std::out_of_range(fmt::format("gate {} ends at bin {}, map has {} range bins", to_string(gate), w.last,
                                        rd.range_bins));
  }
  RangeDopplerMap out = rd;
  const BinWindow active{std::max(w.first, rd.active.first), std::max(std::max(w.first, rd.active.first),
                                                                      std::min(w.last, rd.active.last))};
  for (std::size_t r = 0; r < rd.range_bins; ++r) {
    if (active.contains(r)) continue;
    for (std::size_t d = 0; d < rd.doppler_bins; ++d) {
      for (std::size_t c = 0; c < rd.channels; ++c) out.at(r, d, c) = cdouble{0.0, 0.0};
    }
  }
  out.active = active;
  out.gate = gate;
  return out;
}

std::vector<double> beam_angles(const RadarConfig& config) {
  std::vector<double> angles(config.beam_count());
  for (std::size_t b = 0; b < angles.size(); ++b) angles[b] = config.beam_angle_rad(b);
  return angles;
}

WeightMatrix dbf_weights(const RadarConfig& config) {
  const std::vector<double> angles = beam_angles(config);
  const double pitch = config.antenna_spacing_m() / config.wavelength_m();
  WeightMatrix w(2, static_cast<Eigen::Index>(angles.size()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index b = 0; b < w.cols(); ++b) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) * pitch *
                           std::sin(angles[static_cast<std::size_t>(b)]);
      w(i, b) = std::polar(1.0, phase);
    }
  }
  return w;
}

BeamGrid beamform(const RangeDopplerMap& rd, const WeightMatrix& weights, const RadarConfig& config) {
  if (rd.channels != 3) {
    throw std::invalid_argument(fmt::format("beamform: expected 3 rx channels, map has {}", rd.channels));
  }
  if (weights.rows() != 2 || static_cast<std::size_t>(weights.cols()) != config.beam_count()) {
    throw std::invalid_argument("beamform: weight matrix must be 2 x beam_count");
  }
  BeamGrid grid;
  grid.range_window = rd.active;
  grid.doppler_bins = rd.doppler_bins;
  grid.beams = config.beam_count();
  grid.beam_angles_rad = beam_angles(config);
  grid.range_bin_width_m = rd.range_bin_width_m;
  grid.velocity_bin_width_mps = rd.velocity_bin_width_mps;
  grid.gate = rd.gate;
  const std::size_t cells = grid.range_window.size() * grid.doppler_bins * grid.beams;
  grid.azimuth_response.resize(cells);
  grid.elevation_response.resize(cells);

  const std::size_t beams = grid.beams;
  std::vector<cdouble> w0(beams), w1(beams);
  for (std::size_t b = 0; b < beams; ++b) {
    w0[b] = std::conj(weights(0, static_cast<Eigen::Index>(b)));
    w1[b] = std::conj(weights(1, static_cast<Eigen::Index>(b)));
  }

  for (std::size_t r = grid.range_window.first; r < grid.range_window.last; ++r) {
    for (std::size_t d = 0; d < grid.doppler_bins; ++d) {
      const cdouble corner = rd.at(r, d, 0);
      const cdouble az_elem = rd.at(r, d, 1);
      const cdouble el_elem = rd.at(r, d, 2);
      double* az = grid.azimuth_response.data() + grid.response_index(r, d, 0);
      double* el = grid.elevation_response.data() + grid.response_index(r, d, 0);
      for (std::size_t b = 0; b < beams; ++b) {
        const cdouble base = corner * w0[b];
        az[b] = std::abs(base + az_elem * w1[b]);
        el[b] = std::abs(base + el_elem * w1[b]);
      }
    }
  }
  return grid;
}

std::vector<Detection> detect_points(const BeamGrid& grid, const RadarConfig& config) {
  std::vector<Detection> out;
  const std::size_t beams = grid.beams;
  if (grid.range_window.size() == 0 || grid.doppler_bins == 0 || beams == 0) return out;

  const std::size_t rows = grid.range_window.size() * grid.doppler_bins;
  std::vector<double> az_peak(rows), el_peak(rows);
  double reference = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* az = grid.azimuth_response.data() + i * beams;
    const double* el = grid.elevation_response.data() + i * beams;
    az_peak[i] = *std::max_element(az, az + beams);
    el_peak[i] = *std::max_element(el, el + beams);
    reference = std::max(reference, az_peak[i] * el_peak[i]);
  }
  if (!(reference > 0.0)) return out;

  const double threshold = reference * std::pow(10.0, config.detect_threshold_db() / 20.0);
  for (std::size_t r = grid.range_window.first; r < grid.range_window.last; ++r) {
    for (std::size_t d = 0; d < grid.doppler_bins; ++d) {
      const std::size_t row = (r - grid.range_window.first) * grid.doppler_bins + d;
      if (az_peak[row] * el_peak[row] <= threshold) continue;
      const double* az = grid.azimuth_response.data() + row * beams;
      const double* el = grid.elevation_response.data() + row * beams;
      for (std::size_t a = 0; a < beams; ++a) {
        if (az[a] * el_peak[row] <= threshold) continue;
        for (std::size_t e = 0; e < beams; ++e) {
          const double mag = az[a] * el[e];
          if (mag <= threshold) continue;
          Detection det;
          det.range_bin = r;
          det.doppler_bin = d;
          det.azimuth_beam = a;
          det.elevation_beam = e;
          det.range_m = static_cast<double>(r) * grid.range_bin_width_m;
          det.velocity_mps =
              (static_cast<double>(d) - static_cast<double>(grid.doppler_bins / 2)) * grid.velocity_bin_width_mps;
          det.azimuth_rad = grid.beam_angles_rad[a];
          det.elevation_rad = grid.beam_angles_rad[e];
          det.energy = mag;
          out.push_back(det);
        }
      }
    }
  }
  return out;
}

Selection select_by_velocity(std::span<const Detection> candidates, const RadarConfig& config) {
  const std::size_t per_side = config.point_budget();
  const std::size_t budget = 2 * per_side;
  Selection sel;
  sel.points.reserve(budget);

  if (candidates.empty()) {
    sel.points.assign(budget, Detection{});
    sel.pad_count = budget;
    sel.empty = true;
    return sel;
  }

  std::vector<Detection> ordered(candidates.begin(), candidates.end());
  if (ordered.size() < budget) {
    std::sort(ordered.begin(), ordered.end(), fastest_receding_first);
    const Detection strongest = *std::min_element(ordered.begin(), ordered.end(), tie_break);
    sel.points = std::move(ordered);
    sel.pad_count = budget - sel.points.size();
    sel.points.resize(budget, strongest);
    return sel;
  }

  // Top half first; the bottom half is drawn from what remains so a candidate is never taken twice.
  std::partial_sort(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(per_side), ordered.end(),
                    fastest_receding_first);
  sel.points.assign(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(per_side));
  auto rest = ordered.begin() + static_cast<std::ptrdiff_t>(per_side);
  std::partial_sort(rest, rest + static_cast<std::ptrdiff_t>(per_side), ordered.end(), fastest_approaching_first);
  sel.points.insert(sel.points.end(), rest, rest + static_cast<std::ptrdiff_t>(per_side));
  return sel;
}

Eigen::Vector3d project_to_cartesian(double range_m, double azimuth_rad, double elevation_rad,
                                     const RadarPose& pose, const RadarConfig& config) {
  const double limit = config.max_steer_rad() + kAngleSlack;
  if (!(std::abs(azimuth_rad) <= limit) || !(std::abs(elevation_rad) <= limit)) {
    throw std::domain_error(fmt::format("project_to_cartesian: angles ({}, {}) rad outside the +-{} rad field of view",
                                        azimuth_rad, elevation_rad, config.max_steer_rad()));
  }
  const Eigen::Vector3d direction(std::sin(azimuth_rad) * std::cos(elevation_rad), std::sin(elevation_rad),
                                  std::cos(azimuth_rad) * std::cos(elevation_rad));
  return pose.to_head(range_m * direction);
}

PointCloud extract_point_cloud(const RangeDopplerMap& rd, const RadarPose& pose, const RadarConfig& config) {
  return extract_point_cloud(rd, pose, config, dbf_weights(config));
}

PointCloud extract_point_cloud(const RangeDopplerMap& rd, const RadarPose& pose, const RadarConfig& config,
                               const WeightMatrix& weights) {
  PointCloud cloud;
  cloud.points.reserve(config.points_per_view());
  for (GateTag gate : {GateTag::Upper, GateTag::Lower}) {
    const BeamGrid grid = beamform(range_gate(rd, gate, config), weights, config);
    const std::vector<Detection> candidates = detect_points(grid, config);
    const Selection sel = select_by_velocity(candidates, config);
    cloud.pad_count += sel.pad_count;
    if (sel.empty) ++cloud.empty_selections;

    const std::size_t original = sel.points.size() - sel.pad_count;
    for (std::size_t i = 0; i < sel.points.size(); ++i) {
      const Detection& det = sel.points[i];
      RadarPoint p;
      p.view = pose.view;
      p.gate = gate;
      p.padded = i >= original;
      if (!sel.empty) {
        p.position_m = project_to_cartesian(det.range_m, det.azimuth_rad, det.elevation_rad, pose, config);
        p.radial_velocity_mps = det.velocity_mps;
        p.energy = det.energy;
        p.range_m = det.range_m;
        p.azimuth_rad = det.azimuth_rad;
        p.elevation_rad = det.elevation_rad;
        p.range_bin = det.range_bin;
        p.doppler_bin = det.doppler_bin;
        p.azimuth_beam = det.azimuth_beam;
        p.elevation_beam = det.elevation_beam;
      }
      cloud.points.push_back(p);
    }
  }
  cloud.degraded = cloud.pad_count == cloud.points.size();
  return cloud;
}

}  // namespace egoradar
