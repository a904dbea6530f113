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
 * \file config_file.hpp
 * \brief Text radar configuration: one `key = value` per line, `#` starts a comment.
 *
 * Keys are the RadarParams field names. Unknown keys, repeated keys and
 * derived quantities (wavelength, resolutions, ...) are errors. Missing keys
 * keep their defaults. Gates are written `low:high, low:high` in metres;
 * antenna_spacing_m accepts `auto` for half a wavelength.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egoradar/config.hpp"
#include "egoradar/io/format_error.hpp"

namespace egoradar::io {

/// Field names accepted in a config file, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses and validates. Syntax errors throw FormatError with a line number;
/// physically invalid values throw ConfigError.
RadarConfig parse_config(std::string_view text, const std::string& source = "<config>");
RadarConfig load_config(const std::filesystem::path& path);
/// Every key, canonical order; parse_config(format_config(c)) == c.
std::string format_config(const RadarConfig& config);
void save_config(const std::filesystem::path& path, const RadarConfig& config);

/// Parses a gate list such as "0.3:0.9, 0.9:1.5".
std::vector<RangeGate> parse_gates(std::string_view text);

/// Name of the first field that differs, if any.
std::optional<std::string> first_difference(const RadarParams& a, const RadarParams& b);

}  // namespace egoradar::io
