from __future__ import annotations
from typing import Tuple
import math

import numpy as np
from numpy.typing import NDArray

from risloc.types import Direction, Position3
from risloc.geometry._layout import ArrayLayout
from risloc.geometry._orientation import Orientation


def _check_direction(direction: Direction):
    if not Direction(*direction).is_valid():
        raise ValueError(f"Invalid direction {tuple(direction)} passed.")


def _check_wavelength(wavelength: float):
    if not (math.isfinite(wavelength) and wavelength > 0):
        raise ValueError(f"Invalid wavelength {wavelength} passed.")


def unit_vector(direction: Direction) -> NDArray[np.float64]:
    """Local-frame unit vector of a boresight-referenced direction."""
    _check_direction(direction)
    azimuth, elevation = direction
    return np.array(
        [
            math.cos(elevation) * math.sin(azimuth),
            math.cos(elevation) * math.cos(azimuth),
            math.sin(elevation),
        ]
    )


def wavenumber_vector(direction: Direction, wavelength: float) -> NDArray[np.float64]:
    """g(theta) = (2 pi / lambda) u(theta), in rad/m."""
    _check_wavelength(wavelength)
    return (2 * math.pi / wavelength) * unit_vector(direction)


def steering_vector(
    layout: ArrayLayout, direction: Direction, wavelength: float
) -> NDArray[np.complex128]:
    """a(theta) = exp(j X^T g(theta)); one unit-modulus entry per element."""
    return np.exp(1j * (layout.element_positions @ wavenumber_vector(direction, wavelength)))


def ris_phase_profile(
    layout: ArrayLayout, sweep_direction: Direction, wavelength: float
) -> NDArray[np.complex128]:
    """omega_m = exp(-2j X^T g(phi_m)).

    The factor 2 conjugates the round-trip phase so that
    a(theta)^T diag(omega_m) a(theta) = N_RIS when phi_m = theta.
    """
    return np.exp(
        -2j * (layout.element_positions @ wavenumber_vector(sweep_direction, wavelength))
    )


def direction_to_global(
    direction: Direction,
    distance: float,
    ris_position: Position3,
    orientation: Orientation = Orientation(),
) -> Position3:
    """ris_position + R (d u(theta))."""
    if not math.isfinite(distance) or distance < 0:
        raise ValueError(f"Invalid distance {distance} passed.")
    if distance == 0:
        return Position3(*ris_position)
    offset = orientation.to_global(distance * unit_vector(direction))
    return Position3(*ris_position) + offset


def global_to_direction(
    point: Position3,
    ris_position: Position3,
    orientation: Orientation = Orientation(),
) -> Tuple[float, Direction]:
    """Distance and local direction of ``point`` as seen from the array.

    A point at the array centre is reported at boresight.
    """
    offset = (Position3(*point) - Position3(*ris_position)).as_array()
    distance = float(np.linalg.norm(offset))
    if distance == 0:
        return 0.0, Direction(0.0, 0.0)
    local = orientation.to_local(offset) / distance
    azimuth = math.atan2(local[0], local[1])
    elevation = math.asin(max(-1.0, min(1.0, local[2])))
    return distance, Direction(azimuth, elevation)
