from __future__ import annotations
from typing import NamedTuple, NewType
import math

import numpy as np
from numpy.typing import NDArray

Meters = NewType("Meters", float)
Seconds = NewType("Seconds", float)
Radians = NewType("Radians", float)

# lambda = 0.005 m at 60 GHz exactly.
SPEED_OF_LIGHT = 3e8


class Position3(NamedTuple):
    """A point in the global frame, in meters."""

    x: float
    y: float
    z: float = 0.0

    def __add__(self, other):
        if isinstance(other, (tuple, list, np.ndarray)):
            other = Position3(*[float(v) for v in other])
        if isinstance(other, Position3):
            return Position3(self.x + other.x, self.y + other.y, self.z + other.z)
        raise NotImplementedError()

    def __sub__(self, other):
        if isinstance(other, (tuple, list, np.ndarray)):
            other = Position3(*[float(v) for v in other])
        if isinstance(other, Position3):
            return Position3(self.x - other.x, self.y - other.y, self.z - other.z)
        raise NotImplementedError()

    def __mul__(self, other):
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return Position3(self.x * other, self.y * other, self.z * other)
        raise NotImplementedError()

    @classmethod
    def from_array(cls, values) -> Position3:
        values = np.asarray(values, dtype=float).ravel()
        if values.size not in (2, 3):
            raise ValueError(f"Expected 2 or 3 coordinates, got {values.size}.")
        return cls(*values.tolist())

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x, self.y, self.z], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in self)


class Direction(NamedTuple):
    """An (azimuth, elevation) pair in radians.

    Boresight referenced: (0, 0) is the array normal, azimuth turns in the
    local xy plane and elevation tilts toward +z.
    """

    azimuth: float
    elevation: float = 0.0

    @classmethod
    def from_degrees(cls, azimuth: float, elevation: float = 0.0) -> Direction:
        return cls(math.radians(azimuth), math.radians(elevation))

    @property
    def degrees(self) -> tuple:
        return math.degrees(self.azimuth), math.degrees(self.elevation)

    def is_valid(self) -> bool:
        return (
            math.isfinite(self.azimuth)
            and math.isfinite(self.elevation)
            and -math.pi <= self.azimuth <= math.pi
            and -math.pi / 2 <= self.elevation <= math.pi / 2
        )
