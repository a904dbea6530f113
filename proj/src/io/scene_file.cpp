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


#include "egoradar/io/scene_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace egoradar::io {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double number(const std::string& tok, const std::string& source, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(v)) throw FormatError(source, line, fmt::format("'{}' is not a finite number", tok));
  return v;
}

void expect_args(const std::vector<std::string>& tok, std::size_t n, const std::string& source, std::size_t line) {
  if (tok.size() != n + 1) {
    throw FormatError(source, line, fmt::format("'{}' takes {} argument(s), got {}", tok[0], n, tok.size() - 1));
  }
}

}  // namespace

SceneFile parse_scene(std::string_view text, const std::string& source) {
  SceneFile out;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tok = split(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "noise_std") {
      expect_args(tok, 1, source, line_no);
      out.options.noise_std = number(tok[1], source, line_no);
      if (out.options.noise_std < 0.0) throw FormatError(source, line_no, "noise_std must be non-negative");
    } else if (kw == "path_loss") {
      expect_args(tok, 1, source, line_no);
      if (tok[1] != "on" && tok[1] != "off") throw FormatError(source, line_no, "path_loss takes on|off");
      out.options.path_loss = tok[1] == "on";
    } else if (kw == "clock") {
      expect_args(tok, 3, source, line_no);
      ClockModel clock{number(tok[2], source, line_no), number(tok[3], source, line_no)};
      if (clock.jitter_s < 0.0) throw FormatError(source, line_no, "clock jitter must be non-negative");
      if (tok[1] == "left") {
        out.scene.left_clock = clock;
      } else if (tok[1] == "right") {
        out.scene.right_clock = clock;
      } else {
        throw FormatError(source, line_no, fmt::format("unknown view '{}'", tok[1]));
      }
    } else if (kw == "scatterer") {
      if (tok.size() > 2) throw FormatError(source, line_no, "scatterer takes at most one name");
      Scatterer s;
      s.name = tok.size() == 2 ? tok[1] : fmt::format("s{}", out.scene.scatterers.size());
      out.scene.scatterers.push_back(std::move(s));
    } else if (kw == "waypoint") {
      expect_args(tok, 5, source, line_no);
      if (out.scene.scatterers.empty()) throw FormatError(source, line_no, "waypoint before any scatterer");
      Waypoint w;
      w.time_s = number(tok[1], source, line_no);
      w.position_m = {number(tok[2], source, line_no), number(tok[3], source, line_no), number(tok[4], source, line_no)};
      w.reflectivity = number(tok[5], source, line_no);
      if (w.reflectivity < 0.0) throw FormatError(source, line_no, "reflectivity must be non-negative");
      auto& wps = out.scene.scatterers.back().waypoints;
      if (!wps.empty() && !(w.time_s > wps.back().time_s)) {
        throw FormatError(source, line_no, "waypoint times must strictly increase");
      }
      wps.push_back(w);
    } else {
      throw FormatError(source, line_no, fmt::format("unknown directive '{}'", kw));
    }
  }
  for (const auto& s : out.scene.scatterers) {
    if (s.waypoints.empty()) throw FormatError(source, 0, fmt::format("scatterer '{}' has no waypoints", s.name));
  }
  if (out.scene.scatterers.empty()) throw FormatError(source, 0, "scene has no scatterers");
  out.scene.validate();
  return out;
}

SceneFile load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(fmt::format("scene file not found: {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), path.string());
}

std::string format_scene(const SceneFile& scene) {
  std::string out;
  out += fmt::format("noise_std {}\n", scene.options.noise_std);
  out += fmt::format("path_loss {}\n", scene.options.path_loss ? "on" : "off");
  out += fmt::format("clock left {} {}\n", scene.scene.left_clock.offset_s, scene.scene.left_clock.jitter_s);
  out += fmt::format("clock right {} {}\n", scene.scene.right_clock.offset_s, scene.scene.right_clock.jitter_s);
  for (const auto& s : scene.scene.scatterers) {
    out += s.name.empty() ? "scatterer\n" : fmt::format("scatterer {}\n", s.name);
    for (const auto& w : s.waypoints) {
      out += fmt::format("waypoint {} {} {} {} {}\n", w.time_s, w.position_m.x(), w.position_m.y(), w.position_m.z(),
                         w.reflectivity);
    }
  }
  return out;
}

}  // namespace egoradar::io
