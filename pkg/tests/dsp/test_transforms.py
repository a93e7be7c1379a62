import math

import pytest
import numpy as np

from risloc.types import Waveform
from risloc.dsp import DftPlan, DirectTransform, FastTransform, make_transform, zero_pad

waveform = Waveform(samples_per_chirp=16, chirps_per_frame=16, chirp_duration=1.6e-6)


def _double_sum(frame, plan):
    """The delay-Doppler sum evaluated term by term."""
    delays = plan.delays(waveform)
    dopplers = plan.dopplers(waveform)
    n_size, k_size = frame.shape
    result = np.zeros(plan.shape, dtype=complex)
    for row, delay in enumerate(delays):
        for col, doppler in enumerate(dopplers):
            total = 0j
            for k in range(k_size):
                for n in range(n_size):
                    total += (
                        frame[n, k]
                        * np.exp(2j * math.pi * waveform.slope * delay * n * waveform.sample_period)
                        * np.exp(2j * math.pi * waveform.carrier_freq * doppler * k * waveform.chirp_duration)
                    )
            result[row, col] = total
    return result


class TestTransforms:
    @pytest.mark.parametrize("seed", range(100))
    def test_fast_matches_direct(self, seed):
        rng = np.random.default_rng(seed)
        n, k = rng.integers(1, 17, size=2)
        plan = DftPlan(int(rng.integers(n, 33)), int(rng.integers(k, 33)))
        frame = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        fast = FastTransform().transform(frame, plan, waveform)
        direct = DirectTransform().transform(frame, plan, waveform)
        scale = np.max(np.abs(direct))
        np.testing.assert_allclose(fast, direct, rtol=1e-9, atol=1e-9 * scale)

    @pytest.mark.parametrize("shape, sizes", [((3, 2), (5, 7)), ((4, 4), (4, 4)), ((1, 3), (2, 3))])
    def test_direct_matches_literal_sum(self, shape, sizes):
        rng = np.random.default_rng(1)
        frame = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        plan = DftPlan(*sizes)
        expected = _double_sum(frame, plan)
        np.testing.assert_allclose(
            DirectTransform().transform(frame, plan, waveform), expected, rtol=1e-9, atol=1e-9
        )

    def test_padded_input_gives_same_map(self):
        rng = np.random.default_rng(3)
        frame = rng.standard_normal((5, 6)) + 1j * rng.standard_normal((5, 6))
        plan = DftPlan(11, 13)
        np.testing.assert_allclose(
            FastTransform().transform(zero_pad(frame, plan), plan, waveform),
            FastTransform().transform(frame, plan, waveform),
        )

    def test_prime_reference_sizes(self):
        frame = np.zeros((600, 128), dtype=complex)
        frame[0, 0] = 1.0
        values = FastTransform(workers=1).transform(frame, DftPlan(1199, 4793), Waveform())
        assert values.shape == (1199, 4793)
        np.testing.assert_allclose(np.abs(values), 1.0)

    def test_frame_larger_than_plan(self):
        with pytest.raises(ValueError, match=r".*smaller than the frame*"):
            FastTransform().transform(np.ones((6, 6)), DftPlan(5, 6), waveform)

    def test_make_transform(self):
        assert str(make_transform("fast")) == "fast"
        assert isinstance(make_transform("direct"), DirectTransform)
        with pytest.raises(ValueError, match=r".*Unknown transform*"):
            make_transform("bluestein")
