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


#include "egoradar/io/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace egoradar::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(fmt::format("'{}' is not a number", text));
  }
  return v;
}

std::uint32_t to_u32(std::string_view text) {
  text = trim(text);
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(fmt::format("'{}' is not a non-negative integer", text));
  }
  return v;
}

std::string format_gates(const std::vector<RangeGate>& gates) {
  std::string out;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{}:{}", gates[i].low_m, gates[i].high_m);
  }
  return out;
}

struct Field {
  std::string name;
  std::function<std::string(const RadarParams&)> format;
  std::function<void(RadarParams&, std::string_view)> parse;
};

template <typename T>
Field real_field(std::string name, T RadarParams::*member) {
  return {name, [member](const RadarParams& p) { return fmt::format("{}", p.*member); },
          [member](RadarParams& p, std::string_view v) { p.*member = to_double(v); }};
}

Field count_field(std::string name, std::uint32_t RadarParams::*member) {
  return {name, [member](const RadarParams& p) { return fmt::format("{}", p.*member); },
          [member](RadarParams& p, std::string_view v) { p.*member = to_u32(v); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      real_field("bandwidth_hz", &RadarParams::bandwidth_hz),
      real_field("chirp_duration_s", &RadarParams::chirp_duration_s),
      count_field("samples_per_chirp", &RadarParams::samples_per_chirp),
      count_field("chirps_per_frame", &RadarParams::chirps_per_frame),
      real_field("frame_period_s", &RadarParams::frame_period_s),
      real_field("start_freq_hz", &RadarParams::start_freq_hz),
      real_field("end_freq_hz", &RadarParams::end_freq_hz),
      count_field("rx_count", &RadarParams::rx_count),
      {"antenna_spacing_m",
       [](const RadarParams& p) { return p.antenna_spacing_m ? fmt::format("{}", *p.antenna_spacing_m) : "auto"; },
       [](RadarParams& p, std::string_view v) {
         if (trim(v) == "auto") {
           p.antenna_spacing_m.reset();
         } else {
           p.antenna_spacing_m = to_double(v);
         }
       }},
      count_field("beam_count", &RadarParams::beam_count),
      real_field("max_steer_rad", &RadarParams::max_steer_rad),
      count_field("point_budget", &RadarParams::point_budget),
      real_field("mti_alpha", &RadarParams::mti_alpha),
      count_field("mti_history", &RadarParams::mti_history),
      real_field("tau_s", &RadarParams::tau_s),
      {"gate_bounds_m", [](const RadarParams& p) { return format_gates(p.gate_bounds_m); },
       [](RadarParams& p, std::string_view v) { p.gate_bounds_m = parse_gates(v); }},
      real_field("detect_threshold_db", &RadarParams::detect_threshold_db),
  };
  return table;
}

const std::set<std::string, std::less<>>& derived_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "center_frequency_hz", "center_wavelength_m", "wavelength_m",           "sample_rate_hz",
      "range_resolution_m",  "max_range_m",         "velocity_resolution_mps", "max_velocity_mps",
      "beam_step_rad",       "range_bins",          "doppler_bins",            "points_per_view"};
  return keys;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.name);
    return out;
  }();
  return keys;
}

std::vector<RangeGate> parse_gates(std::string_view text) {
  std::vector<RangeGate> gates;
  std::string_view rest = trim(text);
  if (rest.empty()) throw std::invalid_argument("empty gate list");
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("gate '{}' is not of the form low:high", item));
    }
    gates.push_back({to_double(item.substr(0, colon)), to_double(item.substr(colon + 1))});
  }
  return gates;
}

RadarConfig parse_config(std::string_view text, const std::string& source) {
  RadarParams params;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError(source, line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (derived_keys().contains(key)) {
      throw FormatError(source, line_no, fmt::format("'{}' is derived from other fields and cannot be set", key));
    }
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.name == key; });
    if (it == table.end()) throw FormatError(source, line_no, fmt::format("unknown key '{}'", key));
    if (!seen.insert(std::string(key)).second) throw FormatError(source, line_no, fmt::format("duplicate key '{}'", key));
    if (value.empty()) throw FormatError(source, line_no, fmt::format("missing value for '{}'", key));
    try {
      it->parse(params, value);
    } catch (const std::invalid_argument& e) {
      throw FormatError(source, line_no, fmt::format("{}: {}", key, e.what()));
    }
  }
  return validate_config(params);
}

RadarConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(fmt::format("config file not found: {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string format_config(const RadarConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += fmt::format("{} = {}\n", f.name, f.format(config.params()));
  return out;
}

void save_config(const std::filesystem::path& path, const RadarConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << format_config(config);
}

std::optional<std::string> first_difference(const RadarParams& a, const RadarParams& b) {
  for (const auto& f : fields()) {
    if (f.format(a) != f.format(b)) return f.name;
  }
  return std::nullopt;
}

}  // namespace egoradar::io
