from __future__ import annotations
from typing import NamedTuple, Optional
import math

from risloc.types import SPEED_OF_LIGHT


class PathSpec(NamedTuple):
    """One propagation path of the beat-signal model.

    ``phase`` set to None means the phase is drawn uniformly at random when
    the cube is synthesized. ``extra_delay`` is added to the round trip
    (the RIS loop-back delay for the retransmitted path).
    """

    kind: str
    distance: float
    velocity: float = 0.0
    gain_sq: float = 0.0
    phase: Optional[float] = None
    extra_delay: float = 0.0

    @property
    def delay(self) -> float:
        """tau_l = 2 d_l / c (+ extra delay)."""
        return 2 * self.distance / SPEED_OF_LIGHT + self.extra_delay

    @property
    def doppler(self) -> float:
        """nu_l = 2 v_l / c."""
        return 2 * self.velocity / SPEED_OF_LIGHT

    def amplitude(self, phase: Optional[float] = None) -> complex:
        phase = self.phase if phase is None else phase
        return math.sqrt(self.gain_sq) * complex(math.cos(phase or 0.0), math.sin(phase or 0.0))


def _check_path(distance: float, gain_sq: float, extra_delay: float = 0.0):
    if not (math.isfinite(distance) and distance >= 0):
        raise ValueError(f"Invalid path distance {distance} passed.")
    if not (math.isfinite(gain_sq) and gain_sq >= 0):
        raise ValueError(f"Invalid path gain {gain_sq} passed.")
    if not (math.isfinite(extra_delay) and extra_delay >= 0):
        raise ValueError(f"Invalid path delay {extra_delay} passed.")


class PathKinds:
    """A class that collects the path kinds of the beat-signal model.
    Each kind is a static method returning a PathSpec.
    """

    RIS_LOOPBACK = "ris_loopback"
    TARGET = "target"
    LEAKAGE = "leakage"

    @staticmethod
    def RisLoopback(
        distance: float,
        gain_sq: float,
        loopback_delay: float = 0.0,
        velocity: float = 0.0,
        phase: Optional[float] = None,
    ) -> PathSpec:
        """The path retransmitted by the RIS, delayed by the loop-back delay."""
        _check_path(distance, gain_sq, loopback_delay)
        return PathSpec(
            PathKinds.RIS_LOOPBACK, distance, velocity, gain_sq, phase, loopback_delay
        )

    @staticmethod
    def Target(
        distance: float,
        gain_sq: float,
        velocity: float = 0.0,
        phase: Optional[float] = None,
    ) -> PathSpec:
        """A passive scatterer, including the structural reflection of the RIS."""
        _check_path(distance, gain_sq)
        return PathSpec(PathKinds.TARGET, distance, velocity, gain_sq, phase)

    @staticmethod
    def Leakage(gain_sq: float, delay: float = 0.0) -> PathSpec:
        """Tx-to-Rx leakage: a static path at near-zero delay with zero phase."""
        _check_path(0.0, gain_sq, delay)
        return PathSpec(PathKinds.LEAKAGE, 0.0, 0.0, gain_sq, 0.0, delay)
