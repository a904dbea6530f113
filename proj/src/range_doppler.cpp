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

#include "egoradar/range_doppler.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "egoradar/fft.hpp"

namespace egoradar {

MtiState::MtiState(const RadarConfig& config, MtiMode mode)
    : shape_(config.rx_count() * config.chirps_per_frame() * config.samples_per_chirp()),
      alpha_(config.mti_alpha()),
      capacity_(config.mti_history()),
      mode_(mode) {}

void MtiState::push(const std::vector<cfloat>& samples) {
  history_.push_back(samples);
  while (history_.size() > capacity_) history_.pop_front();
  ++frames_seen_;

  background_.assign(shape_, cdouble{0.0, 0.0});
  if (mode_ == MtiMode::ExponentialAverage) {
    const auto& seed = history_.front();
    for (std::size_t i = 0; i < shape_; ++i) background_[i] = cdouble(seed[i]);
    for (std::size_t h = 1; h < history_.size(); ++h) {
      const auto& x = history_[h];
      for (std::size_t i = 0; i < shape_; ++i) {
        background_[i] = alpha_ * cdouble(x[i]) + (1.0 - alpha_) * background_[i];
      }
    }
  } else {
    for (const auto& x : history_) {
      for (std::size_t i = 0; i < shape_; ++i) background_[i] += cdouble(x[i]);
    }
    const double inv = 1.0 / static_cast<double>(history_.size());
    for (auto& b : background_) b *= inv;
  }
}

FrameCube mti_filter(const FrameCube& frame, MtiState& state, const RadarConfig& config) {
  if (!frame.matches(config) || (state.shape_ != 0 && frame.samples.size() != state.shape_)) {
    throw std::invalid_argument(fmt::format("mti_filter: frame has {} samples, state expects {}",
                                            frame.samples.size(), state.shape_));
  }
  if (state.shape_ == 0) state = MtiState(config);

  FrameCube out = frame;
  if (state.background_.empty()) {
    std::fill(out.samples.begin(), out.samples.end(), cfloat{0.0f, 0.0f});
  } else {
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      out.samples[i] = cfloat(cdouble(frame.samples[i]) - state.background_[i]);
    }
  }
  state.push(frame.samples);
  return out;
}

RangeSpectrum range_fft(const FrameCube& frame, bool window) {
  const std::size_t ns = frame.samples_per_chirp;
  RangeSpectrum out;
  out.rx = frame.rx;
  out.chirps = frame.chirps;
  out.range_bins = ns / 2;
  out.data.resize(out.rx * out.chirps * out.range_bins);
  out.provenance.windowed = window;

  const std::vector<double> w = window ? dsp::hann_window(ns) : std::vector<double>(ns, 1.0);
  std::vector<cdouble> buf(ns);
  for (std::size_t r = 0; r < frame.rx; ++r) {
    for (std::size_t c = 0; c < frame.chirps; ++c) {
      const auto chirp = frame.chirp(r, c);
      for (std::size_t n = 0; n < ns; ++n) buf[n] = cdouble(chirp[n]) * w[n];
      dsp::fft(buf);
      std::copy_n(buf.begin(), out.range_bins, out.data.begin() + static_cast<std::ptrdiff_t>(out.index(r, c, 0)));
    }
  }
  return out;
}

RangeSpectrum clutter_removal(const RangeSpectrum& spectrum) {
  RangeSpectrum out = spectrum;
  const double inv = 1.0 / static_cast<double>(spectrum.chirps);
  for (std::size_t r = 0; r < spectrum.rx; ++r) {
    for (std::size_t b = 0; b < spectrum.range_bins; ++b) {
      cdouble mean{0.0, 0.0};
      for (std::size_t c = 0; c < spectrum.chirps; ++c) mean += spectrum.at(r, c, b);
      mean *= inv;
      for (std::size_t c = 0; c < spectrum.chirps; ++c) out.at(r, c, b) -= mean;
    }
  }
  out.provenance.clutter_removed = true;
  return out;
}

RangeDopplerMap doppler_fft(const RangeSpectrum& spectrum, const RadarConfig& config, bool window) {
  const std::size_t nc = spectrum.chirps;
  RangeDopplerMap rd;
  rd.range_bins = spectrum.range_bins;
  rd.doppler_bins = nc;
  rd.channels = spectrum.rx;
  rd.cells.resize(rd.range_bins * rd.doppler_bins * rd.channels);
  rd.range_bin_width_m = config.range_resolution_m();
  rd.velocity_bin_width_mps = config.velocity_resolution_mps();
  rd.provenance = spectrum.provenance;
  rd.provenance.windowed = spectrum.provenance.windowed || window;
  rd.active = {0, rd.range_bins};

  const std::vector<double> w = window ? dsp::hann_window(nc) : std::vector<double>(nc, 1.0);
  std::vector<cdouble> buf(nc);
  for (std::size_t r = 0; r < spectrum.rx; ++r) {
    for (std::size_t b = 0; b < spectrum.range_bins; ++b) {
      for (std::size_t c = 0; c < nc; ++c) buf[c] = spectrum.at(r, c, b) * w[c];
      dsp::fft(buf);
      for (std::size_t k = 0; k < nc; ++k) rd.at(b, (k + nc / 2) % nc, r) = buf[k];
    }
  }
  return rd;
}

bool ProcessOptions::has(Stage stage) const noexcept {
  return std::find(stages.begin(), stages.end(), stage) != stages.end();
}

ProcessOptions ProcessOptions::with(bool mti, bool clutter, bool window) {
  ProcessOptions o;
  o.stages.clear();
  if (mti) o.stages.push_back(Stage::Mti);
  o.stages.push_back(Stage::RangeFft);
  if (clutter) o.stages.push_back(Stage::ClutterRemoval);
  o.stages.push_back(Stage::DopplerFft);
  o.window = window;
  return o;
}

void validate_options(const ProcessOptions& options) {
  int last = -1;
  for (Stage s : options.stages) {
    const int rank = static_cast<int>(s);
    if (rank <= last) {
      throw std::invalid_argument("process options: stages must appear once each, in the order "
                                  "mti, range_fft, clutter_removal, doppler_fft");
    }
    last = rank;
  }
  if (!options.has(Stage::RangeFft) || !options.has(Stage::DopplerFft)) {
    throw std::invalid_argument("process options: range_fft and doppler_fft are mandatory");
  }
}

RangeDopplerMap process_frame(const FrameCube& frame, MtiState& state, const RadarConfig& config,
                              const ProcessOptions& options) {
  validate_options(options);
  if (!frame.matches(config)) throw std::invalid_argument("process_frame: frame shape does not match config");

  RangeSpectrum spectrum;
  if (options.has(Stage::Mti)) {
    spectrum = range_fft(mti_filter(frame, state, config), options.window);
    spectrum.provenance.mti_applied = true;
  } else {
    spectrum = range_fft(frame, options.window);
  }
  if (options.has(Stage::ClutterRemoval)) spectrum = clutter_removal(spectrum);
  return doppler_fft(spectrum, config, options.window);
}

}  // namespace egoradar
