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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace egoradar::dsp {

/// In-place DFT. Forward is unnormalized (X[k] = sum x[n] e^{-j2pi kn/N});
/// inverse carries the 1/N factor. Safe to call concurrently.
void fft(std::span<std::complex<double>> data);
void ifft(std::span<std::complex<double>> data);

/// Periodic Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / N).
std::vector<double> hann_window(std::size_t n);

}  // namespace egoradar::dsp
