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


#include "egoradar/io/tensor_file.hpp"

#include <fstream>

#include <fmt/format.h>

#include "egoradar/io/binary.hpp"

namespace egoradar::io {

namespace {

constexpr std::string_view kFeatureMagic = "MMFT";
constexpr std::string_view kComplexMagic = "MMCT";

std::size_t element_count(const std::array<std::uint32_t, 4>& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

void write_header(std::ostream& out, std::string_view magic, const std::array<std::uint32_t, 4>& shape) {
  write_magic(out, magic);
  write_u32(out, kTensorVersion);
  for (auto d : shape) write_u32(out, d);
}

std::array<std::uint32_t, 4> read_header(std::istream& in, std::string_view magic, const std::string& source) {
  if (read_magic(in, magic.size()) != magic) throw FormatError(source, 0, "bad tensor magic");
  const std::uint32_t version = read_u32(in);
  if (version != kTensorVersion) throw FormatError(source, 0, fmt::format("unsupported tensor version {}", version));
  std::array<std::uint32_t, 4> shape{};
  for (auto& d : shape) d = read_u32(in);
  return shape;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(fmt::format("tensor file not found: {}", path.string()));
  return in;
}

template <typename T>
void write_complex(const std::filesystem::path& path, const std::array<std::uint32_t, 4>& shape, std::span<const T> data) {
  if (element_count(shape) != data.size()) {
    throw std::invalid_argument(fmt::format("complex tensor has {} elements, shape implies {}", data.size(), element_count(shape)));
  }
  auto out = open_out(path);
  write_header(out, kComplexMagic, shape);
  for (const auto& v : data) {
    write_f32(out, static_cast<float>(v.real()));
    write_f32(out, static_cast<float>(v.imag()));
  }
}

}  // namespace

void write_tensor(std::ostream& out, const FeatureTensor& tensor) {
  if (element_count(tensor.shape) != tensor.data.size()) {
    throw std::invalid_argument("write_tensor: data size disagrees with shape");
  }
  write_header(out, kFeatureMagic, tensor.shape);
  for (float v : tensor.data) write_f32(out, v);
  if (!out) throw std::runtime_error("write_tensor: write failed");
}

void write_tensor(const std::filesystem::path& path, const FeatureTensor& tensor) {
  auto out = open_out(path);
  write_tensor(out, tensor);
}

FeatureTensor read_tensor(std::istream& in, const std::string& source) {
  FeatureTensor t;
  try {
    t.shape = read_header(in, kFeatureMagic, source);
    t.data.resize(element_count(t.shape));
    for (float& v : t.data) v = read_f32(in);
  } catch (const FormatError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw FormatError(source, 0, e.what());
  }
  if (!at_eof(in)) throw FormatError(source, 0, "trailing bytes after tensor data");
  return t;
}

FeatureTensor read_tensor(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_tensor(in, path.string());
}

void write_complex_tensor(const std::filesystem::path& path, const std::array<std::uint32_t, 4>& shape,
                          std::span<const cdouble> data) {
  write_complex(path, shape, data);
}

void write_complex_tensor(const std::filesystem::path& path, const std::array<std::uint32_t, 4>& shape,
                          std::span<const cfloat> data) {
  write_complex(path, shape, data);
}

ComplexTensor read_complex_tensor(const std::filesystem::path& path) {
  auto in = open_in(path);
  ComplexTensor t;
  try {
    t.shape = read_header(in, kComplexMagic, path.string());
    t.data.resize(element_count(t.shape));
    for (auto& v : t.data) {
      const float re = read_f32(in);
      const float im = read_f32(in);
      v = {re, im};
    }
  } catch (const FormatError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw FormatError(path.string(), 0, e.what());
  }
  return t;
}

void dump(const std::filesystem::path& path, const FrameCube& frame) {
  write_complex_tensor(path,
                       {static_cast<std::uint32_t>(frame.rx), static_cast<std::uint32_t>(frame.chirps),
                        static_cast<std::uint32_t>(frame.samples_per_chirp), 1},
                       std::span<const cfloat>(frame.samples));
}

void dump(const std::filesystem::path& path, const RangeSpectrum& spectrum) {
  write_complex_tensor(path,
                       {static_cast<std::uint32_t>(spectrum.rx), static_cast<std::uint32_t>(spectrum.chirps),
                        static_cast<std::uint32_t>(spectrum.range_bins), 1},
                       std::span<const cdouble>(spectrum.data));
}

void dump(const std::filesystem::path& path, const RangeDopplerMap& map) {
  write_complex_tensor(path,
                       {static_cast<std::uint32_t>(map.range_bins), static_cast<std::uint32_t>(map.doppler_bins),
                        static_cast<std::uint32_t>(map.channels), 1},
                       std::span<const cdouble>(map.cells));
}

}  // namespace egoradar::io
