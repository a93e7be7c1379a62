import pytest

from risloc.types import Waveform
from risloc.io import PipelineSettings, ScenarioConfig, SweepSettings


@pytest.fixture(scope="session")
def small_scenario():
    """Reference geometry and fast time with 8 chirps and a five-beam sweep."""
    return ScenarioConfig(
        waveform=Waveform(chirps_per_frame=8),
        sweep=SweepSettings(azimuth_start_deg=-3.0, azimuth_stop_deg=3.0, step_deg=1.5),
        pipeline=PipelineSettings(k_dft=16),
    )


@pytest.fixture(scope="session")
def noiseless_scenario(small_scenario):
    return small_scenario.noiseless()
