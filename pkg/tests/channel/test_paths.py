import math

import pytest

from risloc.channel import PathKinds, PathSpec


class TestPathKinds:
    def test_ris_loopback_delay_includes_loopback(self):
        path = PathKinds.RisLoopback(13.38, 1.0, loopback_delay=1.78e-9)
        assert path.kind == PathKinds.RIS_LOOPBACK
        assert path.delay == pytest.approx(2 * 13.38 / 3e8 + 1.78e-9)

    def test_target(self):
        path = PathKinds.Target(5.0, 2.0, velocity=1.5, phase=0.3)
        assert path == PathSpec(PathKinds.TARGET, 5.0, 1.5, 2.0, 0.3, 0.0)
        assert path.doppler == pytest.approx(1e-8)

    def test_leakage_is_static_with_zero_phase(self):
        path = PathKinds.Leakage(1e-8, delay=2e-10)
        assert (path.distance, path.velocity, path.phase) == (0.0, 0.0, 0.0)
        assert path.delay == pytest.approx(2e-10)

    def test_amplitude(self):
        path = PathKinds.Target(1.0, 4.0, phase=math.pi / 2)
        assert path.amplitude() == pytest.approx(2j)
        assert path.amplitude(math.pi) == pytest.approx(-2.0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"distance": -1.0, "gain_sq": 1.0},
            {"distance": 1.0, "gain_sq": -1.0},
            {"distance": math.nan, "gain_sq": 1.0},
        ],
    )
    def test_invalid_targets(self, kwargs):
        with pytest.raises(ValueError, match=r".*Invalid path*"):
            PathKinds.Target(**kwargs)

    def test_negative_loopback_delay(self):
        with pytest.raises(ValueError, match=r".*Invalid path delay*"):
            PathKinds.RisLoopback(1.0, 1.0, loopback_delay=-1e-9)
