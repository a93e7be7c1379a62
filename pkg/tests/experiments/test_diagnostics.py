import numpy as np
import pytest

from risloc.experiments import diagnostic_run, dominant_peaks, to_db
from risloc.io import PathSettings, ScenarioConfig, SweepSettings, emit_csv, read_csv

NARROW_SWEEP = SweepSettings(azimuth_start_deg=-3.0, azimuth_stop_deg=3.0, step_deg=1.5)


@pytest.fixture(scope="module")
def bundle():
    return diagnostic_run(ScenarioConfig(sweep=NARROW_SWEEP), seed=0, max_distance=20.0)


class TestDominantPeaks:
    profile = np.array([-40.0, 10.0, -40.0, 5.0, -40.0, -12.0, -40.0])

    def test_dynamic_range(self):
        assert dominant_peaks(self.profile).tolist() == [1, 3]
        assert dominant_peaks(self.profile, dynamic_range_db=30.0).tolist() == [1, 3, 5]

    def test_masked_bins_are_ignored(self):
        searchable = np.ones(self.profile.size, dtype=bool)
        searchable[:2] = False
        assert dominant_peaks(self.profile, searchable).tolist() == [3, 5]

    def test_nothing_searchable(self):
        assert dominant_peaks(self.profile, np.zeros(self.profile.size, dtype=bool)).size == 0

    def test_invalid_range(self):
        with pytest.raises(ValueError, match=r".*Invalid dynamic range*"):
            dominant_peaks(self.profile, dynamic_range_db=-1.0)

    def test_to_db_floors_zero(self):
        assert np.isfinite(to_db(np.array([0.0, 1.0]))).all()
        assert to_db(np.array([1e-3]))[0] == pytest.approx(-30.0)


@pytest.mark.slow
class TestDiagnosticRun:
    def test_two_dominant_profile_peaks(self, bundle):
        # structural reflection at the RIS range, retransmission 0.267 m behind it
        distances = bundle.profile_peak_distances
        assert distances.size == 2
        assert distances[0] == pytest.approx(13.38, abs=0.03)
        assert np.diff(distances)[0] == pytest.approx(0.267, abs=0.044)

    def test_beam_profile_peaks_at_nearest_angle(self, bundle):
        profile = bundle.beam_profile
        assert int(profile["power_w"].idxmax()) == 2
        assert profile["selected"].iloc[2]
        assert profile["azimuth_deg"].iloc[2] == pytest.approx(0.0)

    def test_map_is_cropped(self, bundle):
        table = bundle.delay_doppler
        assert table["distance_m"].max() <= 20.0
        assert table["velocity_mps"].abs().max() <= 1.0
        assert list(table.columns) == ["distance_m", "velocity_mps", "power_db"]

    def test_leakage_is_listed_but_not_searchable(self):
        scenario = ScenarioConfig(sweep=NARROW_SWEEP, paths=PathSettings(leakage=True))
        leaky = diagnostic_run(scenario, seed=1)
        peaks = leaky.peaks.sort_values("distance_m")
        np.testing.assert_allclose(peaks["distance_m"], [0.1, 13.38, 13.647], atol=0.03)
        assert peaks["searchable"].tolist() == [False, True, True]
        assert leaky.result.distance == pytest.approx(13.38, abs=0.03)

    def test_emit_csv_writes_three_tables(self, tmp_path, bundle):
        paths = emit_csv(bundle, tmp_path / "diag.csv")
        assert [p.name for p in paths] == [
            "diag_map.csv",
            "diag_beam_profile.csv",
            "diag_distance_profile.csv",
        ]
        profile = read_csv(paths[2])
        assert list(profile.columns) == ["distance_m", "delay_s", "power_db", "searchable"]
        assert len(profile) == 1199
