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


#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "egoradar/config.hpp"
#include "egoradar/fft.hpp"
#include "egoradar/types.hpp"
#include "support.hpp"

using namespace egoradar;
using namespace egoradar::testing;

TEST_SUITE("config") {
  TEST_CASE("default derived constants") {
    const RadarConfig cfg;
    CHECK(cfg.range_resolution_m() == 0.05);
    CHECK(cfg.max_range_m() == 3.2);
    CHECK(cfg.beam_count() == 31);
    CHECK(cfg.range_bins() == 64);
    CHECK(cfg.doppler_bins() == 128);
    CHECK(cfg.points_per_view() == 128);
    CHECK(cfg.wavelength_m() == doctest::Approx(3e8 / 61.5e9).epsilon(1e-15));
    CHECK(cfg.antenna_spacing_m() == doctest::Approx(cfg.wavelength_m() / 2).epsilon(1e-15));
    CHECK(cfg.velocity_resolution_mps() == doctest::Approx(0.0272212543554).epsilon(1e-10));
    CHECK(cfg.max_velocity_mps() == doctest::Approx(1.742160278745).epsilon(1e-10));
    CHECK(cfg.sample_rate_hz() == doctest::Approx(128.0 / 700e-6));
    CHECK(cfg.frame_period() == std::chrono::milliseconds(100));
    CHECK(cfg.tau() == std::chrono::milliseconds(20));
  }

  TEST_CASE("beam angles span +-45 degrees in 3 degree steps") {
    const RadarConfig cfg;
    CHECK(cfg.beam_step_rad() == doctest::Approx(deg(3.0)).epsilon(1e-14));
    for (std::size_t b = 0; b < 31; ++b) {
      CHECK(cfg.beam_angle_rad(b) == doctest::Approx(deg(-45.0 + 3.0 * static_cast<double>(b))).epsilon(1e-13));
    }
    CHECK(cfg.beam_angle_rad(15) == doctest::Approx(0.0));
  }

  TEST_CASE("validation names the offending field") {
    auto expect_field = [](RadarParams p, const std::string& field) {
      try {
        validate_config(p);
        FAIL("expected ConfigError for " << field);
      } catch (const ConfigError& e) {
        CHECK(e.field() == field);
      }
    };
    RadarParams p;
    p.samples_per_chirp = 100;
    expect_field(p, "samples_per_chirp");
    p = {};
    p.rx_count = 4;
    expect_field(p, "rx_count");
    p = {};
    p.beam_count = 30;
    expect_field(p, "beam_count");
    p = {};
    p.bandwidth_hz = 2e9;
    expect_field(p, "bandwidth_hz");
    p = {};
    p.frame_period_s = 0.05;
    expect_field(p, "frame_period_s");
    p = {};
    p.mti_alpha = 0.0;
    expect_field(p, "mti_alpha");
    p = {};
    p.detect_threshold_db = 1.0;
    expect_field(p, "detect_threshold_db");
    p = {};
    p.gate_bounds_m = {{0.2, 0.9}, {0.9, 1.5}};
    expect_field(p, "gate_bounds_m");
    p = {};
    p.gate_bounds_m = {{0.3, 0.9}, {0.9, 3.5}};
    expect_field(p, "gate_bounds_m");
    p = {};
    p.gate_bounds_m = {{0.3, 0.9}};
    expect_field(p, "gate_bounds_m");
  }

  TEST_CASE("unordered gates are reported as such") {
    RadarParams p;
    p.gate_bounds_m = {{0.9, 1.5}, {0.3, 0.9}};
    try {
      validate_config(p);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("gate bounds not increasing") != std::string::npos);
    }
  }

  TEST_CASE("explicit antenna spacing overrides the half-wavelength default") {
    RadarParams p;
    p.antenna_spacing_m = 0.003;
    CHECK(validate_config(p).antenna_spacing_m() == 0.003);
  }

  TEST_CASE("timestamp conversion rounds to the nearest nanosecond") {
    CHECK(to_nanos(1.5).count() == 1'500'000'000);
    CHECK(to_nanos(-0.020).count() == -20'000'000);
    CHECK(to_nanos(1e-10).count() == 0);
    CHECK_THROWS_AS(to_nanos(std::nan("")), std::invalid_argument);
    CHECK(to_seconds(std::chrono::milliseconds(250)) == doctest::Approx(0.25));
  }
}

TEST_SUITE("types") {
  TEST_CASE("default poses are proper rotations and mirror each other") {
    const RadarPose left = RadarPose::default_left();
    const RadarPose right = RadarPose::default_right();
    CHECK_NOTHROW(left.validate());
    CHECK_NOTHROW(right.validate());
    CHECK(left.view == ViewTag::Left);
    CHECK(right.view == ViewTag::Right);
    CHECK(right.position_m.x() == doctest::Approx(0.155));
    CHECK(left.position_m.x() == doctest::Approx(-0.155));
    // Boresight points down the body for both.
    CHECK((right.orientation * Eigen::Vector3d::UnitZ()).isApprox(Eigen::Vector3d(0, -1, 0)));
    CHECK((left.orientation * Eigen::Vector3d::UnitZ()).isApprox(Eigen::Vector3d(0, -1, 0)));
  }

  TEST_CASE("azimuth-mirrored sensor points map to mirrored head-frame points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const RadarPose left = RadarPose::default_left();
    const RadarPose right = RadarPose::default_right();
    for (int i = 0; i < 100; ++i) {
      const Eigen::Vector3d p(u(rng), u(rng), std::abs(u(rng)) + 0.1);
      const Eigen::Vector3d l = left.to_head(Eigen::Vector3d(-p.x(), p.y(), p.z()));
      const Eigen::Vector3d r = right.to_head(p);
      CHECK(l.x() == doctest::Approx(-r.x()));
      CHECK(l.y() == doctest::Approx(r.y()));
      CHECK(l.z() == doctest::Approx(r.z()));
      // Round trip.
      CHECK(right.to_sensor(r).isApprox(p, 1e-12));
    }
  }

  TEST_CASE("improper orientation is rejected") {
    RadarPose pose;
    pose.orientation = Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
    CHECK_THROWS_AS(pose.validate(), std::invalid_argument);
  }

  TEST_CASE("frame cube indexing is (rx, chirp, sample)") {
    const RadarConfig cfg;
    FrameCube f(cfg);
    CHECK(f.samples.size() == 3u * 128u * 128u);
    CHECK(f.index(1, 2, 3) == (1u * 128u + 2u) * 128u + 3u);
    f.at(2, 5, 7) = {1.0f, -2.0f};
    CHECK(f.chirp(2, 5)[7] == cfloat{1.0f, -2.0f});
    CHECK(f.matches(cfg));
  }

  TEST_CASE("view names round trip") {
    CHECK(parse_view(to_string(ViewTag::Left)) == ViewTag::Left);
    CHECK(parse_view(to_string(ViewTag::Right)) == ViewTag::Right);
    CHECK_THROWS(parse_view("center"));
  }
}

TEST_SUITE("fft") {
  TEST_CASE("forward transform matches a brute-force DFT") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (std::size_t n : {2u, 8u, 64u, 128u, 100u}) {
      std::vector<std::complex<double>> x(n);
      for (auto& v : x) v = {g(rng), g(rng)};
      const auto expected = brute_dft(x);
      dsp::fft(x);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(x[k] - expected[k]) < 1e-9 * static_cast<double>(n));
    }
  }

  TEST_CASE("inverse applies 1/N and undoes the forward transform") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> x(128);
    for (auto& v : x) v = {g(rng), g(rng)};
    auto y = x;
    dsp::fft(y);
    dsp::ifft(y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-12);

    std::vector<std::complex<double>> impulse(16, {0.0, 0.0});
    impulse[0] = {16.0, 0.0};
    dsp::ifft(impulse);
    for (const auto& v : impulse) CHECK(v.real() == doctest::Approx(1.0));
  }

  TEST_CASE("periodic Hann window") {
    const auto w = dsp::hann_window(8);
    REQUIRE(w.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(w[i] == doctest::Approx(0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / 8.0)));
    }
    CHECK(w[0] == 0.0);
    CHECK(w[4] == doctest::Approx(1.0));
  }
}
