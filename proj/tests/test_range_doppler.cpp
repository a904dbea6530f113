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
#include <random>
#include <vector>

#include "doctest.h"
#include "egoradar/config.hpp"
#include "egoradar/range_doppler.hpp"
#include "egoradar/scene.hpp"
#include "support.hpp"

using namespace egoradar;
using namespace egoradar::testing;

namespace {

FrameCube constant_frame(const RadarConfig& cfg, cfloat value) {
  FrameCube f(cfg);
  std::fill(f.samples.begin(), f.samples.end(), value);
  return f;
}

// Magnitude at (range bin, doppler bin) summed over channels.
double cell_power(const RangeDopplerMap& rd, std::size_t r, std::size_t d) {
  double acc = 0.0;
  for (std::size_t c = 0; c < rd.channels; ++c) acc += std::norm(rd.at(r, d, c));
  return std::sqrt(acc);
}

std::pair<std::size_t, std::size_t> rd_peak(const RangeDopplerMap& rd) {
  std::pair<std::size_t, std::size_t> best{0, 0};
  double best_mag = -1.0;
  for (std::size_t r = 0; r < rd.range_bins; ++r) {
    for (std::size_t d = 0; d < rd.doppler_bins; ++d) {
      const double m = cell_power(rd, r, d);
      if (m > best_mag) {
        best_mag = m;
        best = {r, d};
      }
    }
  }
  return best;
}

RangeDopplerMap single_frame_map(const ScatterScene& scene, const ProcessOptions& options, double t = 0.0) {
  const RadarConfig cfg;
  const FrameCube frame = synthesize_frame(scene, boresight_pose(), cfg, t);
  MtiState state(cfg);
  return process_frame(frame, state, cfg, options);
}

}  // namespace

TEST_SUITE("mti") {
  TEST_CASE("first frame is zeroed and seeds the background") {
    const RadarConfig cfg;
    MtiState state(cfg);
    const FrameCube out = mti_filter(constant_frame(cfg, {2.0f, -1.0f}), state, cfg);
    for (const auto& v : out.samples) CHECK(v == cfloat{0.0f, 0.0f});
    CHECK(state.frames_seen() == 1);
    CHECK(state.background().front() == cdouble{2.0, -1.0});
  }

  TEST_CASE("step response follows the exponential background over the retained history") {
    const RadarConfig cfg;  // alpha 0.3, history 5
    MtiState state(cfg);
    mti_filter(constant_frame(cfg, {0.0f, 0.0f}), state, cfg);
    for (int n = 1; n <= 8; ++n) {
      const FrameCube out = mti_filter(constant_frame(cfg, {1.0f, 0.0f}), state, cfg);
      // Background seeded by the zero frame while it is retained, then all ones.
      const double expected = n <= 5 ? std::pow(0.7, n - 1) : 0.0;
      CHECK(out.samples[123].real() == doctest::Approx(expected).epsilon(1e-6));
      CHECK(out.samples[0].imag() == doctest::Approx(0.0));
    }
    CHECK(state.history().size() == 5);
  }

  TEST_CASE("window-mean mode subtracts the plain history mean") {
    const RadarConfig cfg;
    MtiState state(cfg, MtiMode::WindowMean);
    mti_filter(constant_frame(cfg, {1.0f, 0.0f}), state, cfg);
    mti_filter(constant_frame(cfg, {3.0f, 0.0f}), state, cfg);
    const FrameCube out = mti_filter(constant_frame(cfg, {4.0f, 0.0f}), state, cfg);
    CHECK(out.samples[7].real() == doctest::Approx(2.0));
  }

  TEST_CASE("a static scene vanishes after the first frame") {
    const RadarConfig cfg;
    const ScatterScene scene = scene_of({Scatterer::stationary(Eigen::Vector3d(0.1, 0.0, 1.0))});
    MtiState state(cfg);
    mti_filter(synthesize_frame(scene, boresight_pose(), cfg, 0.0), state, cfg);
    const FrameCube out = mti_filter(synthesize_frame(scene, boresight_pose(), cfg, 0.1), state, cfg);
    double peak = 0.0;
    for (const auto& v : out.samples) peak = std::max(peak, static_cast<double>(std::abs(v)));
    CHECK(peak < 1e-6);
  }

  TEST_CASE("shape mismatch is rejected") {
    const RadarConfig cfg;
    MtiState state(cfg);
    FrameCube bad(cfg);
    bad.samples.resize(10);
    CHECK_THROWS_AS(mti_filter(bad, state, cfg), std::invalid_argument);
  }
}

TEST_SUITE("range_fft") {
  TEST_CASE("a 1 m reflector lands in range bin 20") {
    const RadarConfig cfg;
    const ScatterScene scene = scene_of({Scatterer::stationary(Eigen::Vector3d(0.0, 0.0, 1.0))});
    const RangeSpectrum spectrum = range_fft(synthesize_frame(scene, boresight_pose(), cfg, 0.0));
    CHECK(spectrum.range_bins == 64);
    std::vector<cdouble> row(spectrum.range_bins);
    for (std::size_t b = 0; b < row.size(); ++b) row[b] = spectrum.at(0, 0, b);
    CHECK(argmax_abs(row) == 20);
  }

  TEST_CASE("unwindowed output equals the brute-force DFT of each chirp") {
    const RadarConfig cfg;
    FrameCube f(cfg);
    std::mt19937_64 rng(9);
    std::normal_distribution<float> g;
    for (auto& v : f.samples) v = {g(rng), g(rng)};
    const RangeSpectrum spectrum = range_fft(f, false);
    for (std::size_t rx : {0u, 2u}) {
      for (std::size_t chirp : {0u, 77u}) {
        const auto c = f.chirp(rx, chirp);
        const auto expected = brute_dft(std::vector<cdouble>(c.begin(), c.end()));
        for (std::size_t b = 0; b < spectrum.range_bins; ++b) {
          CHECK(std::abs(spectrum.at(rx, chirp, b) - expected[b]) < 1e-6);
        }
      }
    }
  }

  TEST_CASE("all-zero input gives an all-zero spectrum") {
    const RadarConfig cfg;
    const RangeSpectrum spectrum = range_fft(FrameCube(cfg));
    for (const auto& v : spectrum.data) CHECK(v == cdouble{0.0, 0.0});
  }

  TEST_CASE("two reflectors one resolution cell apart stay separate without a window") {
    const RadarConfig cfg;
    const ScatterScene scene = scene_of({Scatterer::stationary(Eigen::Vector3d(0.0, 0.0, 1.0)),
                                         Scatterer::stationary(Eigen::Vector3d(0.0, 0.0, 1.05))});
    SimulationOptions opts;
    opts.path_loss = false;
    const RangeSpectrum spectrum = range_fft(synthesize_frame(scene, boresight_pose(), cfg, 0.0, opts), false);
    const double at20 = std::abs(spectrum.at(0, 0, 20));
    const double at21 = std::abs(spectrum.at(0, 0, 21));
    CHECK(at20 == doctest::Approx(at21).epsilon(0.05));
    CHECK(std::abs(spectrum.at(0, 0, 19)) < 0.05 * at20);
    CHECK(std::abs(spectrum.at(0, 0, 22)) < 0.05 * at20);
  }
}

TEST_SUITE("clutter_removal") {
  TEST_CASE("subtracts the complex mean over chirps") {
    RangeSpectrum spectrum;
    spectrum.rx = 1;
    spectrum.chirps = 4;
    spectrum.range_bins = 2;
    spectrum.data = {{1, 0}, {5, 5}, {2, 0}, {5, 5}, {3, 0}, {5, 5}, {6, 0}, {5, 5}};
    const RangeSpectrum out = clutter_removal(spectrum);
    const std::vector<cdouble> bin0{{-2, 0}, {-1, 0}, {0, 0}, {3, 0}};
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::abs(out.at(0, c, 0) - bin0[c]) < 1e-12);
      CHECK(std::abs(out.at(0, c, 1)) < 1e-12);
    }
    CHECK(out.provenance.clutter_removed);
  }

  TEST_CASE("leaves a moving reflector within 0.5 dB") {
    const RadarPose pose = boresight_pose();
    const ScatterScene scene = scene_of({radial_mover(pose, 1.0, 0.0, 0.0, 1.0)});
    const auto with = single_frame_map(scene, ProcessOptions::with(false, true));
    const auto without = single_frame_map(scene, ProcessOptions::with(false, false));
    const auto [r, d] = rd_peak(without);
    CHECK(std::abs(db(cell_power(with, r, d) / cell_power(without, r, d))) < 0.5);
  }
}

TEST_SUITE("doppler_fft") {
  TEST_CASE("static reflector sits at the zero-velocity bin") {
    const ScatterScene scene = scene_of({Scatterer::stationary(Eigen::Vector3d(0.0, 0.0, 1.0))});
    const auto rd = single_frame_map(scene, ProcessOptions::with(false, false));
    const auto [r, d] = rd_peak(rd);
    CHECK(r == 20);
    CHECK(d == 64);
    CHECK(rd.velocity_mps(64) == 0.0);
  }

  TEST_CASE("receding at 1 m/s shifts the peak by 37 bins") {
    const RadarPose pose = boresight_pose();
    const ScatterScene scene = scene_of({radial_mover(pose, 1.0, 0.0, 0.0, 1.0)});
    const auto rd = single_frame_map(scene, ProcessOptions::with(false, true));
    CHECK(rd_peak(rd).second == 64 + 37);
    const auto approaching = single_frame_map(scene_of({radial_mover(pose, 1.0, 0.0, 0.0, -1.0)}),
                                              ProcessOptions::with(false, true));
    CHECK(approaching.velocity_mps(rd_peak(approaching).second) == doctest::Approx(-1.0).epsilon(0.03));
  }

  TEST_CASE("speeds beyond the unambiguous limit alias like a brute-force DFT") {
    const RadarConfig cfg;
    const RadarPose pose = boresight_pose();
    const ScatterScene scene = scene_of({radial_mover(pose, 1.0, 0.0, 0.0, 2.0)});
    const FrameCube frame = synthesize_frame(scene, pose, cfg, 0.0);
    const RangeSpectrum spectrum = range_fft(frame, false);
    const auto rd = doppler_fft(spectrum, cfg, false);
    const auto [r, d] = rd_peak(rd);

    std::vector<cdouble> slow(cfg.chirps_per_frame());
    for (std::size_t c = 0; c < slow.size(); ++c) slow[c] = spectrum.at(0, c, r);
    const auto oracle = brute_dft(slow);
    const std::size_t k = argmax_abs(oracle);
    CHECK(d == (k + cfg.doppler_bins() / 2) % cfg.doppler_bins());
    CHECK(rd.velocity_mps(d) < 0.0);  // wrapped to the negative side
  }
}

TEST_SUITE("process_frame") {
  TEST_CASE("stage lists are validated") {
    ProcessOptions bad;
    bad.stages = {Stage::RangeFft, Stage::Mti, Stage::DopplerFft};
    CHECK_THROWS_AS(validate_options(bad), std::invalid_argument);
    bad.stages = {Stage::RangeFft, Stage::RangeFft, Stage::DopplerFft};
    CHECK_THROWS_AS(validate_options(bad), std::invalid_argument);
    bad.stages = {Stage::Mti, Stage::RangeFft};
    CHECK_THROWS_AS(validate_options(bad), std::invalid_argument);
    CHECK_NOTHROW(validate_options(ProcessOptions::with(false, false)));
    CHECK_NOTHROW(validate_options(ProcessOptions{}));
  }

  TEST_CASE("provenance records the stages that ran") {
    const ScatterScene scene = scene_of({Scatterer::stationary(Eigen::Vector3d(0.0, 0.0, 1.0))});
    const auto rd = single_frame_map(scene, ProcessOptions::with(false, true));
    CHECK_FALSE(rd.provenance.mti_applied);
    CHECK(rd.provenance.clutter_removed);
    CHECK(rd.provenance.windowed);
    CHECK(rd.range_bins == 64);
    CHECK(rd.doppler_bins == 128);
    CHECK(rd.channels == 3);
  }

  TEST_CASE("identical input gives bit-identical maps") {
    const RadarPose pose = boresight_pose();
    const ScatterScene scene = scene_of({radial_mover(pose, 0.8, 0.2, -0.1, 0.4)});
    const auto a = single_frame_map(scene, ProcessOptions{});
    const auto b = single_frame_map(scene, ProcessOptions{});
    CHECK(a.cells == b.cells);
  }
}
