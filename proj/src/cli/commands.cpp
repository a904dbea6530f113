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


#include "egoradar/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numbers>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"

#include "egoradar/alignment.hpp"
#include "egoradar/io/capture.hpp"
#include "egoradar/io/config_file.hpp"
#include "egoradar/io/export.hpp"
#include "egoradar/io/scene_file.hpp"
#include "egoradar/io/tensor_file.hpp"
#include "egoradar/pipeline.hpp"
#include "egoradar/scene.hpp"
#include "egoradar/spatial.hpp"
#include "egoradar/verify.hpp"

namespace egoradar::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kDeg = 180.0 / std::numbers::pi;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RadarParams apply_overrides(RadarParams params, const ConfigArgs& args) {
  if (args.gates) {
    try {
      params.gate_bounds_m = io::parse_gates(*args.gates);
    } catch (const std::invalid_argument& e) {
      throw UsageError(fmt::format("--gates: {}", e.what()));
    }
  }
  if (args.tau_ms) params.tau_s = *args.tau_ms / 1000.0;
  return params;
}

RadarConfig build_config(const ConfigArgs& args) {
  const RadarConfig base = args.config ? io::load_config(*args.config) : RadarConfig{};
  return validate_config(apply_overrides(base.params(), args));
}

PipelineOptions pipeline_options(const StageFlags& flags) {
  return PipelineOptions::with(!flags.no_mti, !flags.no_clutter, !flags.no_compensation);
}

Timestamp skew_from_ms(double ms) {
  if (!(ms >= 0.0)) throw UsageError("--max-skew-ms must be non-negative");
  return to_nanos(ms / 1000.0);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

json provenance_json(const Provenance& p) {
  return {{"mti_applied", p.mti_applied},
          {"clutter_removed", p.clutter_removed},
          {"compensated", p.compensated},
          {"windowed", p.windowed}};
}

json config_json(const RadarConfig& cfg) {
  json gates = json::array();
  for (const auto& g : cfg.params().gate_bounds_m) gates.push_back({g.low_m, g.high_m});
  return {{"samples_per_chirp", cfg.samples_per_chirp()},
          {"chirps_per_frame", cfg.chirps_per_frame()},
          {"range_resolution_m", cfg.range_resolution_m()},
          {"max_range_m", cfg.max_range_m()},
          {"velocity_resolution_mps", cfg.velocity_resolution_mps()},
          {"beam_count", cfg.beam_count()},
          {"points_per_view", cfg.points_per_view()},
          {"tau_s", cfg.params().tau_s},
          {"gate_bounds_m", gates}};
}

json session_json(const SessionResult& r, const RadarConfig& cfg) {
  std::size_t min_points = r.fused.empty() ? 0 : r.fused.front().cloud.size();
  std::size_t max_points = min_points;
  for (const auto& f : r.fused) {
    min_points = std::min(min_points, f.cloud.size());
    max_points = std::max(max_points, f.cloud.size());
  }
  return {{"provenance", provenance_json(r.provenance)},
          {"config", config_json(cfg)},
          {"frames", {{"left", r.left_times.size()}, {"right", r.right_times.size()}}},
          {"pairing",
           {{"pairs", r.pairing.pairs.size()},
            {"dropped", r.pairing.dropped},
            {"unmatched_left", r.pairing.unmatched_left},
            {"unmatched_right", r.pairing.unmatched_right},
            {"rate", r.pairing.rate}}},
          {"windows",
           {{"total", r.windows.size()}, {"accepted", r.accepted_windows}, {"accept_rate", r.window_accept_rate()}}},
          {"points",
           {{"min_per_frame", min_points},
            {"max_per_frame", max_points},
            {"pad_count", r.pad_count},
            {"empty_selections", r.empty_selections},
            {"degraded_frames", r.degraded_frames}}}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << j.dump(2) << '\n';
}

std::set<std::string> parse_formats(const std::vector<std::string>& formats) {
  std::set<std::string> out(formats.begin(), formats.end());
  if (out.empty()) out = {"csv", "tensor"};
  for (const auto& f : out) {
    if (f != "csv" && f != "ply" && f != "tensor") throw UsageError(fmt::format("unknown format '{}'", f));
  }
  return out;
}

void write_truth_csv(const fs::path& path, const Session& session) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << "view,frame,acquisition_s,truth_s,scatterer,range_m,velocity_mps,az_deg,el_deg,amplitude,in_fov\n";
  for (const auto& r : session.truth) {
    out << fmt::format("{},{},{:.9f},{:.9f},{},{:.6f},{:.6f},{:.4f},{:.4f},{:.6g},{}\n", to_string(r.view),
                       r.frame_index, r.acquisition_time_s, r.truth_time_s, r.truth.scatterer, r.truth.range_m,
                       r.truth.radial_velocity_mps, r.truth.azimuth_rad * kDeg, r.truth.elevation_rad * kDeg,
                       r.truth.amplitude, r.truth.in_fov ? 1 : 0);
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const io::FileNotFound& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const io::FormatError& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const ConfigError& e) {
    fmt::print(err, "error: invalid config: {}\n", e.what());
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
  }
  return kExitError;
}

}  // namespace

int simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    io::SceneFile scene = io::load_scene(args.scene);
    const RadarConfig cfg = build_config(args.config);
    scene.options.seed = args.seed;
    const Session session =
        simulate_session(scene.scene, RadarPose::default_left(), RadarPose::default_right(), cfg, args.duration_s,
                         scene.options);
    ensure_dir(args.out_dir);
    for (ViewTag view : {ViewTag::Left, ViewTag::Right}) {
      const fs::path path = args.out_dir / fmt::format("{}.mmvc", to_string(view));
      io::write_capture(path, {cfg, view, session.sync(view)}, session.stream(view));
    }
    write_truth_csv(args.out_dir / "truth.csv", session);
    fmt::print(out, "simulated {} frames per view into {}\n", session.left.size(), args.out_dir.string());
    return kExitOk;
  });
}

int process(const ProcessArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::set<std::string> formats = parse_formats(args.formats);
    const io::Capture left = io::read_capture(args.left);
    const io::Capture right = io::read_capture(args.right);
    if (left.header.view != ViewTag::Left) throw UsageError(fmt::format("{} is not a left-view capture", args.left.string()));
    if (right.header.view != ViewTag::Right) throw UsageError(fmt::format("{} is not a right-view capture", args.right.string()));
    if (auto field = io::first_difference(left.header.config.params(), right.header.config.params())) {
      throw UsageError(fmt::format("captures disagree on {}", *field));
    }

    RadarParams params = left.header.config.params();
    if (args.config.config) {
      // Acquisition fields come from the captures and must agree; processing fields come from the file.
      const RadarParams file = io::load_config(*args.config.config).params();
      RadarParams merged = params;
      merged.beam_count = file.beam_count;
      merged.max_steer_rad = file.max_steer_rad;
      merged.point_budget = file.point_budget;
      merged.mti_alpha = file.mti_alpha;
      merged.mti_history = file.mti_history;
      merged.tau_s = file.tau_s;
      merged.gate_bounds_m = file.gate_bounds_m;
      merged.detect_threshold_db = file.detect_threshold_db;
      if (auto field = io::first_difference(merged, file)) {
        throw UsageError(fmt::format("config disagrees with captures on {}", *field));
      }
      params = merged;
    }
    const RadarConfig cfg = validate_config(apply_overrides(params, args.config));

    SessionSettings settings;
    settings.pipeline = pipeline_options(args.stages);
    settings.max_skew = skew_from_ms(args.max_skew_ms);

    const auto start = std::chrono::steady_clock::now();
    const SessionResult result =
        process_session(cfg, {left.frames, left.header.sync, RadarPose::default_left()},
                        {right.frames, right.header.sync, RadarPose::default_right()}, settings);
    const double elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    ensure_dir(args.out_dir);
    if (formats.contains("csv")) {
      std::ofstream csv(args.out_dir / "points.csv");
      if (!csv) throw std::runtime_error("cannot write points.csv");
      io::write_csv_header(csv);
      for (std::size_t i = 0; i < result.fused.size(); ++i) {
        io::write_csv_rows(csv, i, to_seconds(result.fused[i].time), result.fused[i].cloud);
      }
    }
    if (formats.contains("ply")) {
      ensure_dir(args.out_dir / "ply");
      for (std::size_t i = 0; i < result.fused.size(); ++i) {
        io::write_ply(args.out_dir / "ply" / fmt::format("frame_{:06}.ply", i), result.fused[i].cloud);
      }
    }
    const std::vector<AlignedWindow> accepted = result.accepted();
    const FeatureTensor tensor = assemble_feature_tensor(accepted);
    if (formats.contains("tensor")) io::write_tensor(args.out_dir / "features.mmft", tensor);

    json report = session_json(result, cfg);
    const std::size_t frames = left.frames.size() + right.frames.size();
    report["timing"] = {{"total_ms", elapsed_ms},
                        {"per_view_frame_ms", frames ? elapsed_ms / static_cast<double>(frames) : 0.0}};
    report["tensor_shape"] = tensor.shape;
    report["inputs"] = {{"left", args.left.string()}, {"right", args.right.string()}};
    write_json(args.out_dir / "report.json", report);

    fmt::print(out, "paired {} of {}/{} frames (rate {:.3f}), {} of {} windows accepted, {} padded points\n",
               result.pairing.pairs.size(), left.frames.size(), right.frames.size(), result.pairing.rate,
               result.accepted_windows, result.windows.size(), result.pad_count);
    return kExitOk;
  });
}

int verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    io::SceneFile scene = io::load_scene(args.scene);
    const RadarConfig cfg = build_config(args.config);
    scene.options.seed = args.seed;
    const Session session =
        simulate_session(scene.scene, RadarPose::default_left(), RadarPose::default_right(), cfg, args.duration_s,
                         scene.options);

    SessionSettings settings;
    settings.pipeline = pipeline_options(args.stages);
    settings.max_skew = skew_from_ms(args.max_skew_ms);
    if (args.corrupt_dbf) settings.weights = dbf_weights(cfg).conjugate();
    const SessionResult result =
        process_session(cfg, {session.left, session.left_sync, RadarPose::default_left()},
                        {session.right, session.right_sync, RadarPose::default_right()}, settings);
    const VerifyReport report = verify_session(session, result, cfg, Tolerances::from(cfg));

    if (report.no_truth()) {
      fmt::print(out, "no in-gate truth: no scatterer lies inside a range gate and the field of view\n");
    } else {
      const auto& t = report.tolerances;
      fmt::print(out, "frames checked {}  passed {}  rate {:.4f}  (required {:.2f})\n", report.frames_checked,
                 report.frames_passed, report.pass_rate(), t.min_pass_rate);
      fmt::print(out, "range     mean {:.4f} m    max {:.4f} m    tol {:.4f} m\n", report.range_m.mean_abs,
                 report.range_m.max_abs, t.range_m);
      fmt::print(out, "velocity  mean {:.4f} m/s  max {:.4f} m/s  tol {:.4f} m/s\n", report.velocity_mps.mean_abs,
                 report.velocity_mps.max_abs, t.velocity_mps);
      fmt::print(out, "azimuth   mean {:.2f} deg   max {:.2f} deg   tol {:.2f} deg\n", report.azimuth_rad.mean_abs * kDeg,
                 report.azimuth_rad.max_abs * kDeg, t.angle_rad * kDeg);
      fmt::print(out, "elevation mean {:.2f} deg   max {:.2f} deg   tol {:.2f} deg\n",
                 report.elevation_rad.mean_abs * kDeg, report.elevation_rad.max_abs * kDeg, t.angle_rad * kDeg);
    }
    fmt::print(out, "verdict: {}\n", report.verdict());

    if (args.out_dir) {
      ensure_dir(*args.out_dir);
      json j = session_json(result, cfg);
      j["verify"] = {{"verdict", report.verdict()},
                     {"frames_checked", report.frames_checked},
                     {"frames_passed", report.frames_passed},
                     {"frames_without_points", report.frames_without_points},
                     {"pass_rate", report.pass_rate()},
                     {"range_error_m", {{"mean", report.range_m.mean_abs}, {"max", report.range_m.max_abs}}},
                     {"velocity_error_mps", {{"mean", report.velocity_mps.mean_abs}, {"max", report.velocity_mps.max_abs}}},
                     {"azimuth_error_deg",
                      {{"mean", report.azimuth_rad.mean_abs * kDeg}, {"max", report.azimuth_rad.max_abs * kDeg}}},
                     {"elevation_error_deg",
                      {{"mean", report.elevation_rad.mean_abs * kDeg}, {"max", report.elevation_rad.max_abs * kDeg}}},
                     {"seed", args.seed},
                     {"corrupt_dbf", args.corrupt_dbf}};
      write_json(*args.out_dir / "verify.json", j);
    }
    if (report.no_truth()) return kExitOk;
    return report.passed() ? kExitOk : kExitFail;
  });
}

int export_tensor(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FeatureTensor tensor = io::read_tensor(args.tensor);
    const auto [windows, frames, points, features] = tensor.shape;
    if (features != kFeatureCount && tensor.data.size() != 0) {
      throw UsageError(fmt::format("tensor has {} features per point, expected {}", features, kFeatureCount));
    }
    if (args.format == "tensor") {
      io::write_tensor(args.out, tensor);
    } else if (args.format == "csv") {
      std::ofstream csv(args.out);
      if (!csv) throw std::runtime_error(fmt::format("cannot write {}", args.out.string()));
      csv << "window,frame,point,x,y,z,v,energy,range,view,gate\n";
      for (std::size_t w = 0; w < windows; ++w) {
        for (std::size_t f = 0; f < frames; ++f) {
          for (std::size_t p = 0; p < points; ++p) {
            csv << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6g},{:.6f},{},{}\n", w, f, p,
                               tensor.at(w, f, p, 0), tensor.at(w, f, p, 1), tensor.at(w, f, p, 2),
                               tensor.at(w, f, p, 3), tensor.at(w, f, p, 4), tensor.at(w, f, p, 5),
                               static_cast<int>(tensor.at(w, f, p, 6)), static_cast<int>(tensor.at(w, f, p, 7)));
          }
        }
      }
    } else if (args.format == "ply") {
      ensure_dir(args.out);
      for (std::size_t w = 0; w < windows; ++w) {
        for (std::size_t f = 0; f < frames; ++f) {
          PointCloud cloud;
          for (std::size_t p = 0; p < points; ++p) {
            RadarPoint pt;
            pt.position_m = {tensor.at(w, f, p, 0), tensor.at(w, f, p, 1), tensor.at(w, f, p, 2)};
            pt.radial_velocity_mps = tensor.at(w, f, p, 3);
            pt.energy = tensor.at(w, f, p, 4);
            pt.range_m = tensor.at(w, f, p, 5);
            pt.view = tensor.at(w, f, p, 6) != 0.0f ? ViewTag::Right : ViewTag::Left;
            pt.gate = tensor.at(w, f, p, 7) != 0.0f ? GateTag::Lower : GateTag::Upper;
            cloud.points.push_back(pt);
          }
          io::write_ply(args.out / fmt::format("window_{:04}_frame_{:03}.ply", w, f), cloud);
        }
      }
    } else {
      throw UsageError(fmt::format("unknown format '{}'", args.format));
    }
    fmt::print(out, "exported tensor ({}, {}, {}, {}) as {} to {}\n", windows, frames, points, features, args.format,
               args.out.string());
    return kExitOk;
  });
}

}  // namespace egoradar::cli
