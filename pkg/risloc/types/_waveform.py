from __future__ import annotations
from dataclasses import dataclass
from typing import Tuple
import math

import numpy as np
from numpy.typing import NDArray

from risloc.types._basic_types import Direction, SPEED_OF_LIGHT


@dataclass(frozen=True)
class Waveform:
    """FMCW chirp parameters.

    Defaults describe the reference 60 GHz radar; ``chirp_duration`` defaults to the
    sampled span ``samples_per_chirp * sample_period`` (60 us).

    Parameters
    ----------
    carrier_freq : float
        Carrier frequency f_c in Hz.
    bandwidth : float
        Sweep bandwidth B in Hz.
    chirp_duration : float
        Chirp duration T in seconds; also the chirp repetition interval.
    sample_period : float
        ADC sample period T_s in seconds, 1 / B_IF.
    samples_per_chirp : int
        ADC samples per chirp N.
    chirps_per_frame : int
        Chirps per sweep angle K.
    """

    carrier_freq: float = 60e9
    bandwidth: float = 3.4345e9
    chirp_duration: float = 60e-6
    sample_period: float = 1e-7
    samples_per_chirp: int = 600
    chirps_per_frame: int = 128

    def __post_init__(self):
        self._check_valid_waveform()

    def _check_valid_waveform(self):
        for name in ("carrier_freq", "bandwidth", "chirp_duration", "sample_period"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"Invalid waveform parameter {name}={value} passed.")
        for name in ("samples_per_chirp", "chirps_per_frame"):
            value = getattr(self, name)
            try:
                whole = not isinstance(value, bool) and int(value) == value
            except (TypeError, ValueError, OverflowError):
                whole = False
            if not whole or value < 1:
                raise ValueError(f"Invalid waveform parameter {name}={value} passed.")
        swept = self.slope * self.samples_per_chirp * self.sample_period
        if swept > self.bandwidth * (1 + 1e-9):
            raise ValueError(
                f"Sampled sweep {swept:.6g} Hz exceeds the bandwidth {self.bandwidth:.6g} Hz."
            )

    @property
    def slope(self) -> float:
        """Chirp slope S = B / T in Hz/s."""
        return self.bandwidth / self.chirp_duration

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq

    @property
    def max_delay(self) -> float:
        """Largest unambiguous round-trip delay, 1 / (S T_s)."""
        return 1.0 / (self.slope * self.sample_period)


@dataclass(frozen=True)
class SweepPlan:
    """The ordered RIS sweep directions phi_1 ... phi_M."""

    angles: Tuple[Direction, ...]

    def __post_init__(self):
        if len(self.angles) < 1:
            raise ValueError("A sweep plan needs at least one angle.")
        object.__setattr__(self, "angles", tuple(Direction(*a) for a in self.angles))

    @classmethod
    def azimuth_sweep(
        cls,
        start_deg: float = -45.0,
        stop_deg: float = 45.0,
        step_deg: float = 1.5,
        elevation_deg: float = 0.0,
    ) -> SweepPlan:
        """Azimuth sweep from start to stop (inclusive) at fixed elevation."""
        if step_deg <= 0:
            raise ValueError(f"Invalid sweep step {step_deg} passed.")
        if stop_deg < start_deg:
            raise ValueError(f"Sweep stop {stop_deg} is below sweep start {start_deg}.")
        count = int(math.floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1
        return cls(
            angles=tuple(
                Direction.from_degrees(start_deg + idx * step_deg, elevation_deg)
                for idx in range(count)
            )
        )

    def __len__(self) -> int:
        return len(self.angles)

    def __getitem__(self, index):
        return self.angles[index]

    def __iter__(self):
        return iter(self.angles)

    @property
    def azimuths(self) -> NDArray[np.float64]:
        return np.array([a.azimuth for a in self.angles])

    @property
    def elevations(self) -> NDArray[np.float64]:
        return np.array([a.elevation for a in self.angles])

    def nearest_index(self, direction: Direction) -> int:
        """Index of the sweep angle closest to ``direction`` (smallest index on ties)."""
        distances = np.hypot(
            self.azimuths - direction.azimuth, self.elevations - direction.elevation
        )
        return int(np.argmin(distances))

    def subset(self, start: int, stop: int) -> SweepPlan:
        return SweepPlan(angles=self.angles[start:stop])
