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


/**
 * \file commands.hpp
 * \brief Subcommand implementations behind the egoradar executable.
 *
 * Each command writes human-readable output to `out`, diagnostics to `err`
 * and returns the process exit code: 0 success, 1 verification failure,
 * 2 usage or input error.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace egoradar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

struct StageFlags {
  bool no_mti = false;
  bool no_clutter = false;
  bool no_compensation = false;
};

/// Options shared by every command that builds a RadarConfig.
struct ConfigArgs {
  std::optional<std::filesystem::path> config;
  /// Overrides gate_bounds_m, e.g. "0.3:0.9,0.9:1.5".
  std::optional<std::string> gates;
  std::optional<double> tau_ms;
};

struct SimulateArgs {
  std::filesystem::path scene;
  ConfigArgs config;
  double duration_s = 2.0;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

struct ProcessArgs {
  std::filesystem::path left;
  std::filesystem::path right;
  ConfigArgs config;
  StageFlags stages;
  double max_skew_ms = 10.0;
  /// Any of csv, ply, tensor. Empty means csv and tensor.
  std::vector<std::string> formats;
  std::filesystem::path out_dir = ".";
};

struct VerifyArgs {
  std::filesystem::path scene;
  ConfigArgs config;
  StageFlags stages;
  std::uint64_t seed = 0;
  double duration_s = 2.0;
  double max_skew_ms = 10.0;
  std::optional<std::filesystem::path> out_dir;
  /// Negative control: conjugates the beamforming weights.
  bool corrupt_dbf = false;
};

struct ExportArgs {
  std::filesystem::path tensor;
  std::string format = "csv";
  std::filesystem::path out;
};

int simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int process(const ProcessArgs& args, std::ostream& out, std::ostream& err);
int verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int export_tensor(const ExportArgs& args, std::ostream& out, std::ostream& err);

}  // namespace egoradar::cli
