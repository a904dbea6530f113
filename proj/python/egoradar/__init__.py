# Copyright 2026 The egoradar Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Egocentric FMCW radar point-cloud pipeline."""

from ._egoradar import (
    ConfigError,
    FileNotFound,
    FormatError,
    RadarConfig,
    load_config,
    parse_config,
    process_arrays,
    process_captures,
    range_doppler,
    read_tensor,
    simulate,
    verify_scene,
    write_tensor,
)

FEATURES = ("x", "y", "z", "v", "energy", "range", "view", "gate")

__all__ = [
    "ConfigError",
    "FEATURES",
    "FileNotFound",
    "FormatError",
    "RadarConfig",
    "load_config",
    "parse_config",
    "process_arrays",
    "process_captures",
    "range_doppler",
    "read_tensor",
    "simulate",
    "verify_scene",
    "write_tensor",
]
