import math
import os
import stat

import pytest
import numpy as np

from risloc.types import Direction
from risloc.io import (
    ConfigError,
    GeometrySettings,
    PathSettings,
    ScenarioConfig,
    TargetSettings,
    dump_config,
    load_config,
)


def _write(tmp_path, text, name="scene.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadConfig:
    def test_no_file_gives_reference_scenario(self):
        config = load_config()
        assert config.waveform.carrier_freq == 60e9
        assert config.waveform.chirps_per_frame == 128
        assert config.waveform.samples_per_chirp == 600
        assert (config.pipeline.n_dft, config.pipeline.k_dft) == (1199, 4793)
        assert config.paths.loopback_delay == 1.78e-9
        assert config.link_budget.noise_power_dbm == -63.64
        assert len(config.sweep_plan()) == 61
        assert str(config.layout()) == "16x4"

    def test_empty_file_gives_reference_scenario(self, tmp_path):
        assert load_config(_write(tmp_path, "")) == ScenarioConfig()

    def test_partial_file_fills_defaults(self, tmp_path):
        config = load_config(
            _write(tmp_path, "waveform:\n  chirps_per_frame: 16\npipeline:\n  k_dft: 32\n")
        )
        assert config.waveform.chirps_per_frame == 16
        assert config.waveform.carrier_freq == 60e9
        assert config.pipeline.k_dft == 32

    def test_small_n_dft_is_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match=r".*pipeline.n_dft*") as err:
            load_config(_write(tmp_path, "pipeline:\n  n_dft: 100\n"))
        assert err.value.field == "pipeline.n_dft"

    @pytest.mark.parametrize(
        "text, field",
        [
            ("waveform:\n  colour: red\n", "waveform.colour"),
            ("extras: 1\n", "extras"),
            ("paths:\n  targets:\n    - distance: 4\n      size: 2\n", "paths.targets[0].size"),
        ],
    )
    def test_unknown_field_is_rejected(self, tmp_path, text, field):
        with pytest.raises(ConfigError, match=r".*unknown field*") as err:
            load_config(_write(tmp_path, text))
        assert err.value.field == field

    @pytest.mark.parametrize(
        "text, field",
        [
            ("pipeline:\n  n_dft: abc\n", "pipeline.n_dft"),
            ("pipeline:\n  n_dft: 1199.5\n", "pipeline.n_dft"),
            ("paths:\n  leakage: 3\n", "paths.leakage"),
            ("geometry:\n  surface: mirror\n", "geometry.surface"),
            ("sweep:\n  step_deg: 0\n", "sweep.step_deg"),
            ("link_budget:\n  tx_power_dbm: .nan\n", "link_budget.tx_power_dbm"),
            ("pipeline:\n  window: kaiser\n", "pipeline.window"),
            ("geometry:\n  ue_position: [0, 13.38, 0]\n", "geometry.ue_position"),
            ("waveform:\n  bandwidth: -1\n", "waveform"),
        ],
    )
    def test_invalid_values_name_their_field(self, tmp_path, text, field):
        with pytest.raises(ConfigError) as err:
            load_config(_write(tmp_path, text))
        assert err.value.field == field

    def test_not_a_mapping(self, tmp_path):
        with pytest.raises(ConfigError, match=r".*expected a mapping*"):
            load_config(_write(tmp_path, "- 1\n- 2\n"))

    def test_malformed_yaml(self, tmp_path):
        with pytest.raises(ConfigError, match=r".*could not parse YAML*"):
            load_config(_write(tmp_path, "waveform: [\n"))

    def test_numbers_written_as_strings_are_coerced(self, tmp_path):
        config = load_config(_write(tmp_path, "paths:\n  loopback_delay: 1e-9\n"))
        assert config.paths.loopback_delay == 1e-9

    def test_planar_positions_are_padded(self, tmp_path):
        config = load_config(_write(tmp_path, "geometry:\n  ris_position: [0, 10]\n"))
        assert config.geometry.ris_position == (0.0, 10.0, 0.0)


class TestDumpConfig:
    @pytest.mark.parametrize(
        "config",
        [
            ScenarioConfig(),
            ScenarioConfig(
                geometry=GeometrySettings(
                    ue_position=(0.5, -0.25, 0.1),
                    ris_normal=(0.1, -1.0, 0.0),
                    n_az=16,
                    n_el=16,
                    spacing=0.0024,
                    surface="split",
                    ue_velocity=0.3,
                ),
                paths=PathSettings(
                    leakage=True,
                    random_phases=False,
                    targets=(TargetSettings(4.0, -0.5, 2.0), TargetSettings(7.25)),
                ),
            ).noiseless(),
        ],
    )
    def test_round_trip(self, tmp_path, config):
        path = tmp_path / "dump.yaml"
        dump_config(config, path)
        assert load_config(path) == config

    def test_written_file_is_not_private(self, tmp_path):
        previous = os.umask(0o022)
        try:
            dump_config(ScenarioConfig(), tmp_path / "dump.yaml")
        finally:
            os.umask(previous)
        assert stat.S_IMODE((tmp_path / "dump.yaml").stat().st_mode) == 0o644


class TestScenarioConfig:
    @pytest.fixture(scope="class")
    def config(self):
        return ScenarioConfig()

    def test_ground_truth(self, config):
        truth = config.ground_truth()
        assert truth.distance == pytest.approx(13.38)
        assert truth.aod.azimuth == pytest.approx(0.0, abs=1e-12)
        assert truth.aod.elevation == pytest.approx(0.0, abs=1e-12)

    def test_link_budget_model(self, config):
        budget = config.link_budget_model()
        assert budget.tx_power == pytest.approx(0.1)
        assert budget.noise_power == pytest.approx(4.3251e-10, rel=1e-4)
        assert config.noiseless().link_budget_model().noise_power == 0.0

    def test_paths(self, config):
        assert config.ris_path().delay == pytest.approx(2 * 13.38 / 3e8 + 1.78e-9)
        assert len(config.scatter_paths()) == 1
        assert config.leakage_path() is None

    def test_targets_add_paths(self, config):
        paths = PathSettings(targets=({"distance": 5.0, "velocity": 1.0, "rcs": 2.0},))
        scenario = ScenarioConfig(paths=paths)
        assert len(scenario.scatter_paths()) == 2
        assert scenario.scatter_paths()[1].velocity == 1.0

    def test_pipeline_config_carries_loopback(self, config):
        assert config.pipeline_config().loopback_delay == config.paths.loopback_delay

    def test_with_aod_keeps_distance_and_orientation(self, config):
        moved = config.with_aod(math.radians(10.0))
        truth = moved.ground_truth()
        assert truth.distance == pytest.approx(13.38)
        assert truth.aod.azimuth == pytest.approx(math.radians(10.0))
        np.testing.assert_allclose(moved.orientation().rotation, config.orientation().rotation)

    def test_derived_scenarios(self, config):
        assert config.with_tx_power(5).link_budget.tx_power_dbm == 5.0
        assert len(config.with_beam_step(3.0).sweep_plan()) == 31
        assert config.with_array(16, 16).surface().num_elements == 256

    def test_ue_behind_ris(self, config):
        with pytest.raises(ConfigError, match=r".*behind the RIS*"):
            ScenarioConfig(geometry=GeometrySettings(ris_normal=(0.0, 1.0, 0.0)))

    def test_invalid_target(self):
        with pytest.raises(ConfigError, match=r".*paths.targets.distance*"):
            TargetSettings(distance=0.0)

    def test_boresight_aod_in_default_sweep(self, config):
        assert config.sweep_plan().nearest_index(config.ground_truth().aod) == 30
        assert config.sweep_plan()[30] == Direction(0.0, 0.0)

    @pytest.mark.parametrize(
        "position", [(0.0, 1.0, 2.0, 3.0), (0.0, math.nan, 0.0), ("a", 1.0, 0.0)]
    )
    def test_bad_position_names_its_field(self, position):
        with pytest.raises(ConfigError) as err:
            GeometrySettings(ris_position=position)
        assert err.value.field == "geometry.ris_position"
