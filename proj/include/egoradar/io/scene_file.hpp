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
 * \file scene_file.hpp
 * \brief Text scene descriptions.
 *
 *   # comment
 *   noise_std 0.0005            complex noise std per sample
 *   path_loss on|off
 *   clock left|right <offset_s> <jitter_s>
 *   scatterer [name]            starts a new scatterer
 *   waypoint <t_s> <x> <y> <z> <reflectivity>
 *
 * Positions are head-frame metres. Waypoints belong to the preceding
 * scatterer and are linearly interpolated.
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "egoradar/io/format_error.hpp"
#include "egoradar/scene.hpp"

namespace egoradar::io {

struct SceneFile {
  ScatterScene scene;
  /// noise_std and path_loss come from the file; seed and epoch are left at defaults.
  SimulationOptions options;
};

SceneFile parse_scene(std::string_view text, const std::string& source = "<scene>");
/// Throws FileNotFound ("scene file not found: ...") when the file cannot be opened.
SceneFile load_scene(const std::filesystem::path& path);
std::string format_scene(const SceneFile& scene);

}  // namespace egoradar::io
