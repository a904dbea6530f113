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


// Python bindings: configuration, simulation, per-frame processing, sessions and file formats.

#include <array>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "egoradar/alignment.hpp"
#include "egoradar/config.hpp"
#include "egoradar/io/capture.hpp"
#include "egoradar/io/config_file.hpp"
#include "egoradar/io/format_error.hpp"
#include "egoradar/io/scene_file.hpp"
#include "egoradar/io/tensor_file.hpp"
#include "egoradar/pipeline.hpp"
#include "egoradar/scene.hpp"
#include "egoradar/verify.hpp"

namespace py = pybind11;
using namespace egoradar;

namespace {

using CArray = py::array_t<std::complex<float>, py::array::c_style | py::array::forcecast>;
using FArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

// (frames, rx, chirps, samples) complex64.
CArray frames_to_array(const std::vector<FrameCube>& frames, const RadarConfig& cfg) {
  CArray out({frames.size(), cfg.rx_count(), cfg.chirps_per_frame(), cfg.samples_per_chirp()});
  auto* dst = out.mutable_data();
  for (const auto& f : frames) {
    std::memcpy(dst, f.samples.data(), f.samples.size() * sizeof(cfloat));
    dst += f.samples.size();
  }
  return out;
}

FrameCube array_to_frame(const CArray& data, const RadarConfig& cfg) {
  FrameCube f(cfg);
  if (data.ndim() != 3 || static_cast<std::size_t>(data.shape(0)) != cfg.rx_count() ||
      static_cast<std::size_t>(data.shape(1)) != cfg.chirps_per_frame() ||
      static_cast<std::size_t>(data.shape(2)) != cfg.samples_per_chirp()) {
    throw py::value_error("frame must have shape (rx, chirps, samples) matching the config");
  }
  std::memcpy(f.samples.data(), data.data(), f.samples.size() * sizeof(cfloat));
  return f;
}

std::vector<std::int64_t> local_times(const std::vector<FrameCube>& frames) {
  std::vector<std::int64_t> t;
  for (const auto& f : frames) t.push_back(f.local_timestamp.count());
  return t;
}

std::vector<FrameCube> frames_from(const CArray& data, const std::vector<std::int64_t>& times, const RadarConfig& cfg,
                                   ViewTag view) {
  if (data.ndim() != 4 || static_cast<std::size_t>(data.shape(0)) != times.size()) {
    throw py::value_error("frames must have shape (n, rx, chirps, samples) with one timestamp per frame");
  }
  std::vector<FrameCube> frames;
  const std::size_t stride = cfg.rx_count() * cfg.chirps_per_frame() * cfg.samples_per_chirp();
  for (std::size_t i = 0; i < times.size(); ++i) {
    FrameCube f(cfg);
    if (static_cast<std::size_t>(data.shape(1) * data.shape(2) * data.shape(3)) != stride) {
      throw py::value_error("frame shape does not match the config");
    }
    std::memcpy(f.samples.data(), data.data() + i * stride, stride * sizeof(cfloat));
    f.local_timestamp = Timestamp(times[i]);
    f.frame_index = i;
    f.view = view;
    frames.push_back(std::move(f));
  }
  return frames;
}

// (points, 8) float32 with the tensor feature layout.
FArray cloud_to_array(const PointCloud& cloud) {
  FArray out({cloud.size(), kFeatureCount});
  auto* p = out.mutable_data();
  for (const auto& pt : cloud.points) {
    *p++ = static_cast<float>(pt.position_m.x());
    *p++ = static_cast<float>(pt.position_m.y());
    *p++ = static_cast<float>(pt.position_m.z());
    *p++ = static_cast<float>(pt.radial_velocity_mps);
    *p++ = static_cast<float>(pt.energy);
    *p++ = static_cast<float>(pt.range_m);
    *p++ = static_cast<float>(pt.view);
    *p++ = static_cast<float>(pt.gate);
  }
  return out;
}

FArray tensor_to_array(const FeatureTensor& t) {
  FArray out({t.shape[0], t.shape[1], t.shape[2], t.shape[3]});
  std::memcpy(out.mutable_data(), t.data.data(), t.data.size() * sizeof(float));
  return out;
}

FeatureTensor array_to_tensor(const FArray& a) {
  if (a.ndim() != 4) throw py::value_error("feature tensor must be 4-D (window, frame, point, feature)");
  FeatureTensor t;
  for (int i = 0; i < 4; ++i) t.shape[i] = static_cast<std::uint32_t>(a.shape(i));
  t.data.assign(a.data(), a.data() + a.size());
  return t;
}

py::dict session_to_dict(const SessionResult& r) {
  py::list clouds;
  py::list times;
  for (const auto& f : r.fused) {
    clouds.append(cloud_to_array(f.cloud));
    times.append(to_seconds(f.time));
  }
  py::dict d;
  d["clouds"] = clouds;
  d["times"] = times;
  d["pairs"] = r.pairing.pairs.size();
  d["pairing_rate"] = r.pairing.rate;
  d["windows"] = r.windows.size();
  d["accepted_windows"] = r.accepted_windows;
  d["pad_count"] = r.pad_count;
  d["tensor"] = tensor_to_array(assemble_feature_tensor(r.accepted()));
  d["provenance"] = py::dict(py::arg("mti_applied") = r.provenance.mti_applied,
                             py::arg("clutter_removed") = r.provenance.clutter_removed,
                             py::arg("compensated") = r.provenance.compensated);
  return d;
}

SessionSettings settings_for(bool mti, bool clutter_removal, bool compensation, double max_skew_ms) {
  SessionSettings s;
  s.pipeline = PipelineOptions::with(mti, clutter_removal, compensation);
  s.max_skew = to_nanos(max_skew_ms * 1e-3);
  return s;
}

}  // namespace

PYBIND11_MODULE(_egoradar, m) {
  m.doc() = "Egocentric FMCW radar point-cloud pipeline";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<io::FileNotFound>(m, "FileNotFound", PyExc_FileNotFoundError);

  py::class_<RadarConfig>(m, "RadarConfig")
      .def(py::init<>())
      .def_property_readonly("range_resolution_m", &RadarConfig::range_resolution_m)
      .def_property_readonly("max_range_m", &RadarConfig::max_range_m)
      .def_property_readonly("velocity_resolution_mps", &RadarConfig::velocity_resolution_mps)
      .def_property_readonly("max_velocity_mps", &RadarConfig::max_velocity_mps)
      .def_property_readonly("wavelength_m", &RadarConfig::wavelength_m)
      .def_property_readonly("beam_count", &RadarConfig::beam_count)
      .def_property_readonly("beam_step_rad", &RadarConfig::beam_step_rad)
      .def_property_readonly("range_bins", &RadarConfig::range_bins)
      .def_property_readonly("doppler_bins", &RadarConfig::doppler_bins)
      .def_property_readonly("points_per_view", &RadarConfig::points_per_view)
      .def_property_readonly("frame_period_s", &RadarConfig::frame_period_s)
      .def("beam_angles", [](const RadarConfig& c) { return beam_angles(c); })
      .def("to_text", [](const RadarConfig& c) { return io::format_config(c); })
      .def("__eq__", [](const RadarConfig& a, const RadarConfig& b) { return a == b; });

  m.def("load_config", &io::load_config, py::arg("path"));
  m.def("parse_config", [](const std::string& text) { return io::parse_config(text); }, py::arg("text"));

  m.def(
      "simulate",
      [](const std::filesystem::path& scene_path, double duration_s, std::uint64_t seed,
         std::optional<RadarConfig> config) {
        const RadarConfig cfg = config.value_or(RadarConfig{});
        io::SceneFile scene = io::load_scene(scene_path);
        scene.options.seed = seed;
        const Session s = simulate_session(scene.scene, RadarPose::default_left(), RadarPose::default_right(), cfg,
                                           duration_s, scene.options);
        py::dict d;
        d["left"] = frames_to_array(s.left, cfg);
        d["right"] = frames_to_array(s.right, cfg);
        d["left_times_ns"] = local_times(s.left);
        d["right_times_ns"] = local_times(s.right);
        d["left_sync_ns"] = std::make_pair(s.left_sync.reference.count(), s.left_sync.local.count());
        d["right_sync_ns"] = std::make_pair(s.right_sync.reference.count(), s.right_sync.local.count());
        return d;
      },
      py::arg("scene_path"), py::arg("duration_s") = 2.0, py::arg("seed") = 0, py::arg("config") = py::none(),
      "Simulate both views of a scene file. Frames are complex64 arrays (n, rx, chirps, samples).");

  m.def(
      "range_doppler",
      [](const CArray& frame, bool clutter_removal, std::optional<RadarConfig> config) {
        const RadarConfig cfg = config.value_or(RadarConfig{});
        MtiState state(cfg);
        const RangeDopplerMap rd =
            process_frame(array_to_frame(frame, cfg), state, cfg, ProcessOptions::with(false, clutter_removal));
        py::array_t<std::complex<double>> out({rd.range_bins, rd.doppler_bins, rd.channels});
        std::memcpy(out.mutable_data(), rd.cells.data(), rd.cells.size() * sizeof(cdouble));
        return out;
      },
      py::arg("frame"), py::arg("clutter_removal") = true, py::arg("config") = py::none(),
      "Range-Doppler map (range, doppler, channel) of one frame without MTI history.");

  m.def(
      "process_arrays",
      [](const CArray& left, const std::vector<std::int64_t>& left_times, std::pair<std::int64_t, std::int64_t> left_sync,
         const CArray& right, const std::vector<std::int64_t>& right_times,
         std::pair<std::int64_t, std::int64_t> right_sync, bool mti, bool clutter_removal, bool compensation,
         double max_skew_ms, std::optional<RadarConfig> config) {
        const RadarConfig cfg = config.value_or(RadarConfig{});
        const auto lf = frames_from(left, left_times, cfg, ViewTag::Left);
        const auto rf = frames_from(right, right_times, cfg, ViewTag::Right);
        SessionResult r;
        {
          py::gil_scoped_release release;
          r = process_session(cfg,
                              {lf, {Timestamp(left_sync.first), Timestamp(left_sync.second)}, RadarPose::default_left()},
                              {rf, {Timestamp(right_sync.first), Timestamp(right_sync.second)}, RadarPose::default_right()},
                              settings_for(mti, clutter_removal, compensation, max_skew_ms));
        }
        return session_to_dict(r);
      },
      py::arg("left"), py::arg("left_times_ns"), py::arg("left_sync_ns"), py::arg("right"), py::arg("right_times_ns"),
      py::arg("right_sync_ns"), py::arg("mti") = true, py::arg("clutter_removal") = true,
      py::arg("compensation") = true, py::arg("max_skew_ms") = 10.0, py::arg("config") = py::none());

  m.def(
      "process_captures",
      [](const std::filesystem::path& left_path, const std::filesystem::path& right_path, bool mti,
         bool clutter_removal, bool compensation, double max_skew_ms) {
        const io::Capture left = io::read_capture(left_path);
        const io::Capture right = io::read_capture(right_path);
        if (left.header.config != right.header.config) throw py::value_error("captures use different configs");
        SessionResult r;
        {
          py::gil_scoped_release release;
          r = process_session(left.header.config, {left.frames, left.header.sync, RadarPose::default_left()},
                              {right.frames, right.header.sync, RadarPose::default_right()},
                              settings_for(mti, clutter_removal, compensation, max_skew_ms));
        }
        return session_to_dict(r);
      },
      py::arg("left_path"), py::arg("right_path"), py::arg("mti") = true, py::arg("clutter_removal") = true,
      py::arg("compensation") = true, py::arg("max_skew_ms") = 10.0);

  m.def(
      "verify_scene",
      [](const std::filesystem::path& scene_path, double duration_s, std::uint64_t seed, bool mti,
         bool clutter_removal, bool compensation) {
        const RadarConfig cfg;
        io::SceneFile scene = io::load_scene(scene_path);
        scene.options.seed = seed;
        VerifyReport rep;
        {
          py::gil_scoped_release release;
          const Session s = simulate_session(scene.scene, RadarPose::default_left(), RadarPose::default_right(), cfg,
                                             duration_s, scene.options);
          const SessionResult r = process_session(cfg, {s.left, s.left_sync, RadarPose::default_left()},
                                                  {s.right, s.right_sync, RadarPose::default_right()},
                                                  settings_for(mti, clutter_removal, compensation, 10.0));
          rep = verify_session(s, r, cfg, Tolerances::from(cfg));
        }
        py::dict d;
        d["verdict"] = rep.verdict();
        d["frames_checked"] = rep.frames_checked;
        d["frames_passed"] = rep.frames_passed;
        d["pass_rate"] = rep.pass_rate();
        d["range_error_m"] = rep.range_m.max_abs;
        d["velocity_error_mps"] = rep.velocity_mps.max_abs;
        d["azimuth_error_rad"] = rep.azimuth_rad.max_abs;
        d["elevation_error_rad"] = rep.elevation_rad.max_abs;
        return d;
      },
      py::arg("scene_path"), py::arg("duration_s") = 2.0, py::arg("seed") = 0, py::arg("mti") = true,
      py::arg("clutter_removal") = true, py::arg("compensation") = true);

  m.def("read_tensor", [](const std::filesystem::path& p) { return tensor_to_array(io::read_tensor(p)); },
        py::arg("path"));
  m.def("write_tensor", [](const std::filesystem::path& p, const FArray& a) { io::write_tensor(p, array_to_tensor(a)); },
        py::arg("path"), py::arg("tensor"));
}
