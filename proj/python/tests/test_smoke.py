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

import os
import pathlib

import numpy as np
import pytest

import egoradar

DATA = pathlib.Path(os.environ.get("EGORADAR_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_default_constants():
    cfg = egoradar.RadarConfig()
    assert cfg.range_resolution_m == 0.05
    assert cfg.max_range_m == 3.2
    assert cfg.beam_count == 31
    angles = np.degrees(cfg.beam_angles())
    np.testing.assert_allclose(angles, np.arange(-45, 46, 3), atol=1e-12)


def test_config_text_round_trip_and_errors():
    cfg = egoradar.parse_config("mti_alpha = 0.5\n")
    assert egoradar.parse_config(cfg.to_text()) == cfg
    with pytest.raises(ValueError):
        egoradar.parse_config("no_such_key = 1\n")
    with pytest.raises(ValueError):
        egoradar.parse_config("samples_per_chirp = 100\n")


def test_simulate_and_range_doppler_peak():
    sim = egoradar.simulate(DATA / "single_mover.scn", duration_s=0.5, seed=2)
    assert sim["left"].shape == (5, 3, 128, 128)
    assert sim["left"].dtype == np.complex64
    assert len(sim["right_times_ns"]) == 5
    rd = egoradar.range_doppler(sim["right"][0])
    assert rd.shape == (64, 128, 3)
    r, _ = np.unravel_index(np.argmax(np.abs(rd[:, :, 0])), rd.shape[:2])
    assert 0.3 <= r * 0.05 <= 1.5


def test_process_arrays_gives_fixed_size_clouds():
    sim = egoradar.simulate(DATA / "single_mover.scn", duration_s=1.0, seed=1)
    out = egoradar.process_arrays(
        sim["left"], sim["left_times_ns"], sim["left_sync_ns"],
        sim["right"], sim["right_times_ns"], sim["right_sync_ns"], mti=False)
    assert out["pairs"] == 10
    assert all(c.shape == (256, 8) for c in out["clouds"])
    assert out["tensor"].shape == (1, 10, 256, 8)
    assert set(np.unique(out["tensor"][..., 6])) <= {0.0, 1.0}
    assert out["provenance"]["mti_applied"] is False


def test_verify_scene_passes():
    report = egoradar.verify_scene(DATA / "single_mover.scn", seed=0)
    assert report["verdict"] == "PASS"
    assert report["pass_rate"] >= 0.98


def test_tensor_round_trip(tmp_path):
    t = np.random.default_rng(0).standard_normal((2, 3, 4, 8)).astype(np.float32)
    egoradar.write_tensor(tmp_path / "t.mmft", t)
    np.testing.assert_array_equal(egoradar.read_tensor(tmp_path / "t.mmft"), t)


def test_missing_scene():
    with pytest.raises(FileNotFoundError):
        egoradar.simulate(DATA / "nope.scn")
