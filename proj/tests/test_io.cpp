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


#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "egoradar/alignment.hpp"
#include "egoradar/io/capture.hpp"
#include "egoradar/io/config_file.hpp"
#include "egoradar/io/export.hpp"
#include "egoradar/io/format_error.hpp"
#include "egoradar/io/scene_file.hpp"
#include "egoradar/io/tensor_file.hpp"
#include "egoradar/scene.hpp"
#include "support.hpp"

using namespace egoradar;
using namespace egoradar::testing;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    io::parse_config(text);
  } catch (const io::FormatError& e) {
    return e.line();
  }
  return 0;
}

std::size_t scene_error_line(const std::string& text) {
  try {
    io::parse_scene(text);
  } catch (const io::FormatError& e) {
    return e.line();
  }
  return 0;
}

PointCloud sample_cloud() {
  PointCloud c;
  RadarPoint a;
  a.position_m = {0.1, -0.5, 0.25};
  a.radial_velocity_mps = -0.75;
  a.energy = 2.5;
  a.range_m = 0.55;
  a.azimuth_rad = deg(30.0);
  a.elevation_rad = deg(-15.0);
  a.view = ViewTag::Left;
  a.gate = GateTag::Upper;
  RadarPoint b = a;
  b.view = ViewTag::Right;
  b.gate = GateTag::Lower;
  b.position_m = {-0.2, -1.25, 0.0};
  c.points = {a, b};
  return c;
}

}  // namespace

TEST_SUITE("config_file") {
  TEST_CASE("format then parse round-trips every field") {
    RadarParams p;
    p.mti_alpha = 0.45;
    p.point_budget = 16;
    p.antenna_spacing_m = 0.0024;
    p.gate_bounds_m = {{0.35, 0.8}, {0.85, 1.6}};
    p.tau_s = 0.0125;
    const RadarConfig cfg = validate_config(p);
    const RadarConfig back = io::parse_config(io::format_config(cfg));
    CHECK(back == cfg);
    CHECK_FALSE(io::first_difference(back.params(), cfg.params()).has_value());
  }

  TEST_CASE("comments, blank lines and auto spacing") {
    const RadarConfig cfg = io::parse_config("# header\n\nmti_alpha = 0.5   # trailing\nantenna_spacing_m = auto\n");
    CHECK(cfg.mti_alpha() == 0.5);
    CHECK_FALSE(cfg.params().antenna_spacing_m.has_value());
  }

  TEST_CASE("errors carry the line number") {
    CHECK(error_line("mti_alpha = 0.3\nno_such_key = 1\n") == 2);
    CHECK(error_line("mti_alpha = 0.3\n\nmti_alpha = 0.4\n") == 3);
    CHECK(error_line("center_wavelength_m = 0.005\n") == 1);
    CHECK(error_line("samples_per_chirp = lots\n") == 1);
    CHECK(error_line("just a line\n") == 1);
  }

  TEST_CASE("validation failures surface as config errors") {
    CHECK_THROWS_AS(io::parse_config("samples_per_chirp = 100\n"), ConfigError);
  }

  TEST_CASE("gate lists") {
    const auto gates = io::parse_gates("0.3:0.9, 0.9:1.5");
    REQUIRE(gates.size() == 2);
    CHECK(gates[1] == RangeGate{0.9, 1.5});
    CHECK_THROWS(io::parse_gates("0.3-0.9"));
  }

  TEST_CASE("first difference names the field") {
    RadarParams a, b;
    b.samples_per_chirp = 64;
    CHECK(io::first_difference(a, b) == std::optional<std::string>("samples_per_chirp"));
  }

  TEST_CASE("missing file") {
    CHECK_THROWS_AS(io::load_config("/nonexistent/radar.cfg"), io::FileNotFound);
  }
}

TEST_SUITE("capture_file") {
  TEST_CASE("captures round-trip bit-exactly") {
    const RadarConfig cfg;
    SimulationOptions opts;
    opts.noise_std = 0.05;
    opts.seed = 3;
    const ScatterScene scene = scene_of({Scatterer::stationary(Eigen::Vector3d(0.2, -0.9, 0.1))});
    const Session s =
        simulate_session(scene, RadarPose::default_left(), RadarPose::default_right(), cfg, 0.3, opts);
    const io::CaptureHeader header{cfg, ViewTag::Right, s.right_sync};
    std::stringstream buf;
    io::write_capture(buf, header, s.right);
    const io::Capture back = io::read_capture(buf);
    CHECK(back.header.config == cfg);
    CHECK(back.header.view == ViewTag::Right);
    CHECK(back.header.sync == s.right_sync);
    REQUIRE(back.frames.size() == s.right.size());
    for (std::size_t i = 0; i < back.frames.size(); ++i) {
      CHECK(back.frames[i].samples == s.right[i].samples);
      CHECK(back.frames[i].local_timestamp == s.right[i].local_timestamp);
      CHECK(back.frames[i].frame_index == s.right[i].frame_index);
      CHECK(back.frames[i].view == ViewTag::Right);
    }
  }

  TEST_CASE("bad magic and truncation are format errors") {
    std::stringstream junk("JUNKJUNKJUNK");
    CHECK_THROWS_AS(io::read_capture(junk), io::FormatError);

    const RadarConfig cfg;
    std::vector<FrameCube> frames(1, FrameCube(cfg));
    std::stringstream buf;
    io::write_capture(buf, {cfg, ViewTag::Left, {}}, frames);
    std::string bytes = buf.str();
    bytes.resize(bytes.size() - 10);
    std::stringstream cut(bytes);
    CHECK_THROWS_AS(io::read_capture(cut), io::FormatError);
  }

  TEST_CASE("frames must match the header config") {
    const RadarConfig cfg;
    RadarParams small;
    small.samples_per_chirp = 64;
    std::vector<FrameCube> frames(1, FrameCube(validate_config(small)));
    std::stringstream buf;
    CHECK_THROWS(io::write_capture(buf, {cfg, ViewTag::Left, {}}, frames));
  }
}

TEST_SUITE("tensor_file") {
  TEST_CASE("feature tensors round-trip bit-exactly") {
    FeatureTensor t;
    t.shape = {2, 3, 4, 8};
    t.data.resize(2 * 3 * 4 * 8);
    std::mt19937 rng(5);
    std::normal_distribution<float> g;
    for (auto& v : t.data) v = g(rng);
    t.data[5] = -0.0f;
    std::stringstream buf;
    io::write_tensor(buf, t);
    CHECK(buf.str().substr(0, 4) == "MMFT");
    CHECK(buf.str().size() == 4 + 4 + 16 + t.data.size() * 4);
    CHECK(io::read_tensor(buf) == t);
  }

  TEST_CASE("size mismatches are rejected") {
    FeatureTensor t;
    t.shape = {1, 1, 2, 8};
    t.data.resize(16);
    std::stringstream buf;
    io::write_tensor(buf, t);
    std::stringstream extra(buf.str() + "x");
    CHECK_THROWS_AS(io::read_tensor(extra), io::FormatError);
    std::stringstream shortened(buf.str().substr(0, buf.str().size() - 4));
    CHECK_THROWS_AS(io::read_tensor(shortened), io::FormatError);
  }

  TEST_CASE("complex dumps round-trip") {
    const auto dir = scratch_dir("complex");
    const std::vector<cdouble> data{{1.0, -2.0}, {0.5, 0.25}};
    io::write_complex_tensor(dir / "c.mmct", {1, 1, 1, 2}, std::span<const cdouble>(data));
    const auto back = io::read_complex_tensor(dir / "c.mmct");
    CHECK(back.shape == std::array<std::uint32_t, 4>{1, 1, 1, 2});
    CHECK(back.data[0] == cfloat{1.0f, -2.0f});
  }
}

TEST_SUITE("export") {
  TEST_CASE("golden CSV header and row") {
    std::ostringstream out;
    io::write_csv_header(out);
    io::write_csv_rows(out, 7, 0.5, sample_cloud());
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "frame,t,view,gate,x,y,z,v,energy,range,az,el");
    CHECK(row.rfind("7,", 0) == 0);
    CHECK(row.find(",left,upper,") != std::string::npos);
    // Angles are written in degrees.
    std::vector<std::string> fields;
    std::stringstream rs(row);
    for (std::string f; std::getline(rs, f, ',');) fields.push_back(f);
    REQUIRE(fields.size() == 12);
    CHECK(std::stod(fields[10]) == doctest::Approx(30.0));
    CHECK(std::stod(fields[11]) == doctest::Approx(-15.0));
    CHECK(std::stod(fields[7]) == doctest::Approx(-0.75));
  }

  TEST_CASE("golden PLY header") {
    CHECK(io::ply_header(256) ==
          "ply\n"
          "format binary_little_endian 1.0\n"
          "element vertex 256\n"
          "property float x\n"
          "property float y\n"
          "property float z\n"
          "property float velocity\n"
          "property float energy\n"
          "property uchar view\n"
          "property uchar gate\n"
          "end_header\n");
  }

  TEST_CASE("PLY vertices round-trip") {
    std::stringstream buf;
    io::write_ply(buf, sample_cloud());
    CHECK(buf.str().size() == io::ply_header(2).size() + 2 * (5 * 4 + 2));
    const auto v = io::read_ply(buf);
    REQUIRE(v.size() == 2);
    CHECK(v[0].x == 0.1f);
    CHECK(v[0].velocity == -0.75f);
    CHECK(v[0].view == 0);
    CHECK(v[1].view == 1);
    CHECK(v[1].gate == 1);
  }
}

TEST_SUITE("scene_file") {
  TEST_CASE("parses directives") {
    const auto sf = io::parse_scene(
        "noise_std 0.01\npath_loss off\nclock left 0.05 0.002\nscatterer hand\n"
        "waypoint 0 0.1 -0.8 0.2 1.0\nwaypoint 2 0.1 -1.0 0.2 0.5\n");
    CHECK(sf.options.noise_std == 0.01);
    CHECK_FALSE(sf.options.path_loss);
    CHECK(sf.scene.left_clock.offset_s == 0.05);
    CHECK(sf.scene.left_clock.jitter_s == 0.002);
    REQUIRE(sf.scene.scatterers.size() == 1);
    CHECK(sf.scene.scatterers[0].name == "hand");
    CHECK(sf.scene.scatterers[0].position_at(1.0).isApprox(Eigen::Vector3d(0.1, -0.9, 0.2)));
    CHECK(sf.scene.scatterers[0].reflectivity_at(1.0) == doctest::Approx(0.75));
  }

  TEST_CASE("format then parse round-trips") {
    const auto sf = io::parse_scene("noise_std 0.02\nclock right -0.03 0\nscatterer a\nwaypoint 0 1 2 3 0.5\n");
    const auto back = io::parse_scene(io::format_scene(sf));
    CHECK(back.options.noise_std == sf.options.noise_std);
    CHECK(back.scene.right_clock.offset_s == -0.03);
    CHECK(back.scene.scatterers[0].waypoints[0].position_m == sf.scene.scatterers[0].waypoints[0].position_m);
  }

  TEST_CASE("errors carry the line number") {
    CHECK(scene_error_line("noise_std 0.01\nwaypoint 0 1 2 3 1\n") == 2);
    CHECK(scene_error_line("scatterer\nwaypoint 0 1 2\n") == 2);
    CHECK(scene_error_line("bogus 1\n") == 1);
    CHECK(scene_error_line("clock middle 0 0\n") == 1);
    CHECK_THROWS_AS(io::load_scene("/nonexistent.scn"), io::FileNotFound);
  }
}
