from __future__ import annotations
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from risloc.types._waveform import Waveform, SweepPlan


class BeatCube:
    """A class holding the beat-signal samples Y_m of every sweep angle.

    Samples are indexed ``[n, k, m]``: ADC sample, chirp, sweep angle.

    Parameters
    ----------
    samples : NDArray[complex]
        Array of shape (N, K, M).
    waveform : Waveform
        The chirp parameters the samples were taken with.
    plan : SweepPlan
        The RIS sweep directions, one per frame m.
    """

    def __init__(self, samples: NDArray, waveform: Waveform, plan: SweepPlan):
        self.samples = np.asarray(samples, dtype=complex)
        self.waveform = waveform
        self.plan = plan
        self._check_shape()

    def _check_shape(self):
        expected = (
            self.waveform.samples_per_chirp,
            self.waveform.chirps_per_frame,
            len(self.plan),
        )
        if self.samples.shape != expected:
            raise ValueError(
                f"Cube shape {self.samples.shape} does not match the declared {expected}."
            )
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("Beat cube contains non-finite samples.")

    @classmethod
    def zeros(cls, waveform: Waveform, plan: SweepPlan) -> BeatCube:
        shape = (waveform.samples_per_chirp, waveform.chirps_per_frame, len(plan))
        return cls(np.zeros(shape, dtype=complex), waveform, plan)

    def __repr__(self):
        n, k, m = self.shape
        return f"BeatCube(N={n}, K={k}, M={m})"

    def __len__(self):
        return self.samples.shape[2]

    def __getitem__(self, index: int) -> NDArray:
        """The N x K frame of sweep angle ``index``."""
        return self.samples[:, :, index]

    def frames(self) -> Iterator[NDArray]:
        for idx in range(len(self)):
            yield self[idx]

    @property
    def shape(self):
        return self.samples.shape

    def with_samples(self, samples: NDArray) -> BeatCube:
        return BeatCube(samples, self.waveform, self.plan)

    def scaled(self, factor: float) -> BeatCube:
        return self.with_samples(self.samples * factor)

    def trimmed(self, start: int, stop: int) -> BeatCube:
        """Keep frames ``start`` (inclusive) to ``stop`` (exclusive)."""
        if not 0 <= start < stop <= len(self):
            raise ValueError(f"Trim range {start}:{stop} outside 0:{len(self)}.")
        return BeatCube(
            self.samples[:, :, start:stop], self.waveform, self.plan.subset(start, stop)
        )
