import logging
import math
from typing import Optional

import numpy as np
import scipy.fft
from numpy.typing import NDArray

from risloc.types import Waveform
from risloc.dsp.spectrum import DftPlan, zero_pad
from risloc.dsp._abstract_transform import DelayDopplerTransform

logger = logging.getLogger(__name__)


class FastTransform(DelayDopplerTransform):
    """Staged inverse FFTs from ``scipy.fft``.

    Both exponents of the delay-Doppler sum are positive, so the map is an
    unnormalised inverse DFT (``norm="forward"``). Zero padding happens through
    the ``n`` argument of each stage; pocketfft handles non power-of-two and
    prime sizes (1199, 4793) exactly.
    """

    name = "fast"

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers

    def transform(self, frame: NDArray, plan: DftPlan, waveform: Waveform) -> NDArray:
        plan.check_frame(frame)
        stage = scipy.fft.ifft(frame, n=plan.n_dft, axis=0, norm="forward", workers=self.workers)
        values = scipy.fft.ifft(stage, n=plan.k_dft, axis=1, norm="forward", workers=self.workers)
        return np.fft.fftshift(values, axes=1)


class DirectTransform(DelayDopplerTransform):
    """The literal double sum, evaluated as two dense matrix products on the
    plan's (tau, nu) grid values. Quadratic cost; meant for checking.
    """

    name = "direct"

    def transform(self, frame: NDArray, plan: DftPlan, waveform: Waveform) -> NDArray:
        padded = zero_pad(frame, plan)
        if plan.n_dft * plan.k_dft > 1 << 20:
            logger.warning("Direct transform on a %dx%d grid will be slow", plan.n_dft, plan.k_dft)
        n = np.arange(plan.n_dft)
        k = np.arange(plan.k_dft)
        delays = plan.delays(waveform)
        dopplers = plan.dopplers(waveform)
        delay_kernel = np.exp(
            2j * math.pi * waveform.slope * np.outer(delays, n) * waveform.sample_period
        )
        doppler_kernel = np.exp(
            2j * math.pi * waveform.carrier_freq * np.outer(dopplers, k) * waveform.chirp_duration
        )
        return delay_kernel @ padded @ doppler_kernel.T


TRANSFORMS = {cls.name: cls for cls in (FastTransform, DirectTransform)}


def make_transform(kind: str, workers: Optional[int] = None) -> DelayDopplerTransform:
    if kind == FastTransform.name:
        return FastTransform(workers=workers)
    if kind == DirectTransform.name:
        return DirectTransform()
    raise ValueError(f"Unknown transform {kind!r}; expected one of {sorted(TRANSFORMS)}.")
