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

#include "egoradar/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace egoradar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Below this range the 1/R^2 model is clamped.
constexpr double kMinPathLossRange_m = 1e-3;

std::size_t segment_for(const std::vector<Waypoint>& wps, double t) {
  auto it = std::upper_bound(wps.begin(), wps.end(), t,
                             [](double value, const Waypoint& w) { return value < w.time_s; });
  return static_cast<std::size_t>(std::distance(wps.begin(), it));
}

struct SensorGeometry {
  double range = 0.0;
  double azimuth = 0.0;
  double elevation = 0.0;
};

SensorGeometry geometry(const Eigen::Vector3d& sensor_point) {
  SensorGeometry g;
  g.range = sensor_point.norm();
  if (g.range > 0.0) {
    g.azimuth = std::atan2(sensor_point.x(), sensor_point.z());
    g.elevation = std::asin(std::clamp(sensor_point.y() / g.range, -1.0, 1.0));
  }
  return g;
}

double amplitude_for(double reflectivity, double range, bool path_loss) {
  if (!path_loss) return reflectivity;
  const double r = std::max(range, kMinPathLossRange_m);
  return reflectivity / (r * r);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32), static_cast<std::uint32_t>(c)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

Eigen::Vector3d Scatterer::position_at(double t) const {
  if (waypoints.empty()) throw std::logic_error("scatterer has no waypoints");
  if (t <= waypoints.front().time_s) return waypoints.front().position_m;
  if (t >= waypoints.back().time_s) return waypoints.back().position_m;
  const std::size_t hi = segment_for(waypoints, t);
  const Waypoint& a = waypoints[hi - 1];
  const Waypoint& b = waypoints[hi];
  const double u = (t - a.time_s) / (b.time_s - a.time_s);
  return a.position_m + u * (b.position_m - a.position_m);
}

double Scatterer::reflectivity_at(double t) const {
  if (waypoints.empty()) throw std::logic_error("scatterer has no waypoints");
  if (t <= waypoints.front().time_s) return waypoints.front().reflectivity;
  if (t >= waypoints.back().time_s) return waypoints.back().reflectivity;
  const std::size_t hi = segment_for(waypoints, t);
  const Waypoint& a = waypoints[hi - 1];
  const Waypoint& b = waypoints[hi];
  const double u = (t - a.time_s) / (b.time_s - a.time_s);
  return a.reflectivity + u * (b.reflectivity - a.reflectivity);
}

Scatterer Scatterer::stationary(const Eigen::Vector3d& position, double reflectivity, std::string name) {
  Scatterer s;
  s.name = std::move(name);
  s.waypoints.push_back({0.0, position, reflectivity});
  return s;
}

Scatterer Scatterer::moving(const Eigen::Vector3d& position, const Eigen::Vector3d& velocity, double t0,
                            double t_begin, double t_end, double reflectivity, std::string name) {
  if (!(t_end > t_begin)) throw std::invalid_argument("moving scatterer needs t_end > t_begin");
  Scatterer s;
  s.name = std::move(name);
  s.waypoints.push_back({t_begin, position + (t_begin - t0) * velocity, reflectivity});
  s.waypoints.push_back({t_end, position + (t_end - t0) * velocity, reflectivity});
  return s;
}

ScatterScene ScatterScene::mirrored() const {
  ScatterScene out = *this;
  for (auto& s : out.scatterers) {
    for (auto& w : s.waypoints) w.position_m.x() = -w.position_m.x();
  }
  return out;
}

void ScatterScene::validate() const {
  for (std::size_t i = 0; i < scatterers.size(); ++i) {
    const auto& wps = scatterers[i].waypoints;
    if (wps.empty()) throw std::invalid_argument(fmt::format("scatterer {} has no waypoints", i));
    for (std::size_t k = 0; k < wps.size(); ++k) {
      const auto& w = wps[k];
      if (!std::isfinite(w.time_s) || !w.position_m.allFinite() || !std::isfinite(w.reflectivity)) {
        throw std::invalid_argument(fmt::format("scatterer {} waypoint {} is not finite", i, k));
      }
      if (w.reflectivity < 0.0) {
        throw std::invalid_argument(fmt::format("scatterer {} waypoint {} has negative reflectivity", i, k));
      }
      if (k > 0 && !(w.time_s > wps[k - 1].time_s)) {
        throw std::invalid_argument(fmt::format("scatterer {} waypoint times must strictly increase", i));
      }
    }
  }
  for (const ClockModel* c : {&left_clock, &right_clock}) {
    if (!std::isfinite(c->offset_s) || !std::isfinite(c->jitter_s) || c->jitter_s < 0.0) {
      throw std::invalid_argument("clock model needs finite offset and non-negative jitter");
    }
  }
}

FrameCube synthesize_frame(const ScatterScene& scene, const RadarPose& pose, const RadarConfig& config,
                           double frame_time_s, const SimulationOptions& options, std::uint64_t frame_index) {
  FrameCube cube(config);
  cube.view = pose.view;
  cube.frame_index = frame_index;
  cube.local_timestamp = to_nanos(frame_time_s);

  const std::size_t ns = config.samples_per_chirp();
  const std::size_t nc = config.chirps_per_frame();
  const double lambda = config.wavelength_m();
  const double f_start = config.params().start_freq_hz;
  const double spacing = config.antenna_spacing_m();
  const double tc = config.chirp_duration_s();
  const double dt = config.sample_interval_s();
  const double slope = config.chirp_slope_hz_per_s();

  std::vector<cdouble> acc(cube.samples.size(), cdouble{0.0, 0.0});
  std::vector<double> phase(ns);

  for (const Scatterer& s : scene.scatterers) {
    for (std::size_t k = 0; k < nc; ++k) {
      const double t = frame_time_s + static_cast<double>(k) * tc;
      const SensorGeometry g = geometry(pose.to_sensor(s.position_at(t)));
      if (g.range > config.max_range_m()) cube.aliasing_warning = true;
      const double amp = amplitude_for(s.reflectivity_at(t), g.range, options.path_loss);
      if (amp == 0.0) continue;

      const double f_if = slope * 2.0 * g.range / kSpeedOfLight;
      // Beat phase at the start of the sweep; halfway through the chirp it corresponds to the center wavelength.
      const double carrier = 4.0 * std::numbers::pi * g.range * f_start / kSpeedOfLight;
      const double rx_phase[3] = {0.0, kTwoPi * spacing / lambda * std::sin(g.azimuth),
                                  kTwoPi * spacing / lambda * std::sin(g.elevation)};
      for (std::size_t n = 0; n < ns; ++n) phase[n] = kTwoPi * f_if * static_cast<double>(n) * dt + carrier;

      for (std::size_t r = 0; r < cube.rx; ++r) {
        cdouble* out = acc.data() + cube.index(r, k, 0);
        for (std::size_t n = 0; n < ns; ++n) {
          const double p = phase[n] + rx_phase[r];
          if (options.real_if) {
            out[n] += cdouble(amp * std::cos(p), 0.0);
          } else {
            out[n] += std::polar(amp, p);
          }
        }
      }
    }
  }

  if (options.noise_std > 0.0) {
    std::mt19937_64 rng(mix_seed(options.seed, static_cast<std::uint64_t>(pose.view), frame_index, 0x6e6f697365));
    const double sigma = options.real_if ? options.noise_std : options.noise_std / std::numbers::sqrt2;
    std::normal_distribution<double> noise(0.0, sigma);
    for (auto& v : acc) {
      const double re = noise(rng);
      const double im = options.real_if ? 0.0 : noise(rng);
      v += cdouble(re, im);
    }
  }

  for (std::size_t i = 0; i < acc.size(); ++i) cube.samples[i] = cfloat(acc[i]);
  return cube;
}

std::vector<ScattererTruth> scatterer_truth(const ScatterScene& scene, const RadarPose& pose,
                                            const RadarConfig& config, double time_s) {
  std::vector<ScattererTruth> out;
  out.reserve(scene.scatterers.size());
  const double half = 0.5 * config.chirp_duration_s();
  for (std::size_t i = 0; i < scene.scatterers.size(); ++i) {
    const Scatterer& s = scene.scatterers[i];
    const SensorGeometry g = geometry(pose.to_sensor(s.position_at(time_s)));
    const double r_before = pose.to_sensor(s.position_at(time_s - half)).norm();
    const double r_after = pose.to_sensor(s.position_at(time_s + half)).norm();
    ScattererTruth t;
    t.scatterer = i;
    t.range_m = g.range;
    t.radial_velocity_mps = (r_after - r_before) / config.chirp_duration_s();
    t.azimuth_rad = g.azimuth;
    t.elevation_rad = g.elevation;
    t.amplitude = s.reflectivity_at(time_s);
    const double theta = config.max_steer_rad();
    t.in_fov = std::abs(g.azimuth) <= theta && std::abs(g.elevation) <= theta;
    out.push_back(t);
  }
  return out;
}

double burst_center_s(const RadarConfig& config, double acquisition_time_s) {
  return acquisition_time_s + 0.5 * config.burst_duration_s();
}

std::size_t session_frame_count(const RadarConfig& config, double duration_s) {
  if (!(duration_s >= config.frame_period_s() - 1e-12)) {
    throw std::invalid_argument(
        fmt::format("session duration {} s is shorter than one frame period ({} s)", duration_s,
                    config.frame_period_s()));
  }
  return static_cast<std::size_t>(std::floor(duration_s / config.frame_period_s() + 1e-9));
}

Session simulate_session(const ScatterScene& scene, const RadarPose& left, const RadarPose& right,
                         const RadarConfig& config, double duration_s, const SimulationOptions& options) {
  scene.validate();
  left.validate();
  right.validate();
  const std::size_t frames = session_frame_count(config, duration_s);
  const double tf = config.frame_period_s();

  Session session;
  for (const RadarPose* pose : {&left, &right}) {
    const ClockModel& clock = scene.clock(pose->view);
    auto& stream = session.stream(pose->view);
    stream.reserve(frames);

    std::mt19937_64 rng(mix_seed(options.seed, static_cast<std::uint64_t>(pose->view), 0, 0x636c6f636b));
    std::normal_distribution<double> jitter(0.0, clock.jitter_s > 0.0 ? clock.jitter_s : 1.0);

    const SyncRecord sync{to_nanos(options.epoch_s), to_nanos(options.epoch_s + clock.offset_s)};
    if (pose->view == ViewTag::Left) {
      session.left_sync = sync;
    } else {
      session.right_sync = sync;
    }

    for (std::size_t k = 0; k < frames; ++k) {
      double j = clock.jitter_s > 0.0 ? jitter(rng) : 0.0;
      j = std::clamp(j, -0.45 * tf, 0.45 * tf);
      const double acquisition = options.epoch_s + static_cast<double>(k) * tf + j;
      FrameCube cube = synthesize_frame(scene, *pose, config, acquisition, options, k);
      cube.local_timestamp = to_nanos(acquisition + clock.offset_s);
      stream.push_back(std::move(cube));

      const double center = burst_center_s(config, acquisition);
      for (const auto& t : scatterer_truth(scene, *pose, config, center)) {
        session.truth.push_back({pose->view, k, acquisition, center, t});
      }
    }
  }
  return session;
}

}  // namespace egoradar
