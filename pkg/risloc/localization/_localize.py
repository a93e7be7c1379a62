from __future__ import annotations
from typing import NamedTuple, Optional
import math

import numpy as np

from risloc.types import Direction, Position3
from risloc.geometry import (
    Orientation,
    direction_to_global,
    global_to_direction,
    unit_vector,
)


class LocalizationEstimate(NamedTuple):
    """The radar's position estimate and the quantities it was built from."""

    position: Position3
    distance: float
    aod: Direction
    velocity: float = 0.0


class GroundTruth(NamedTuple):
    """True scene geometry seen from the RIS."""

    ue_position: Position3
    ris_position: Position3
    orientation: Orientation
    distance: float
    aod: Direction
    velocity: float = 0.0

    @classmethod
    def from_positions(
        cls,
        ue_position: Position3,
        ris_position: Position3,
        orientation: Optional[Orientation] = None,
        velocity: float = 0.0,
    ) -> GroundTruth:
        orientation = Orientation() if orientation is None else orientation
        distance, aod = global_to_direction(ue_position, ris_position, orientation)
        return cls(
            Position3(*ue_position), Position3(*ris_position), orientation, distance, aod, velocity
        )


class ErrorReport(NamedTuple):
    distance_error: float
    angle_error: float
    position_error: float
    velocity_error: float = 0.0


def angular_separation(first: Direction, second: Direction) -> float:
    """Great-circle angle between two directions, in radians."""
    u = unit_vector(first)
    v = unit_vector(second)
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(u @ v))


def localize(
    distance: float,
    aod: Direction,
    ris_position: Position3,
    orientation: Optional[Orientation] = None,
) -> Position3:
    """x_UE = x_RIS + d R u(theta)."""
    if not math.isfinite(distance) or distance < 0:
        raise ValueError(f"Invalid estimated distance {distance} passed.")
    orientation = Orientation() if orientation is None else orientation
    return direction_to_global(aod, distance, ris_position, orientation)


def estimate_position(
    result, ris_position: Position3, orientation: Optional[Orientation] = None
) -> LocalizationEstimate:
    """Localize from a ``SweepResult``'s distance, AOD and velocity."""
    position = localize(result.distance, result.aod, ris_position, orientation)
    return LocalizationEstimate(position, result.distance, result.aod, result.velocity)


def error_report(estimate: LocalizationEstimate, truth: GroundTruth) -> ErrorReport:
    return ErrorReport(
        distance_error=abs(estimate.distance - truth.distance),
        angle_error=angular_separation(estimate.aod, truth.aod),
        position_error=(Position3(*estimate.position) - truth.ue_position).norm(),
        velocity_error=abs(estimate.velocity - truth.velocity),
    )
