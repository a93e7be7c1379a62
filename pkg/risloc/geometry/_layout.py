from __future__ import annotations
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class ArrayLayout:
    """Element positions of a planar array in its local frame.

    The array lies in the local xz plane (y = 0) with its centroid at the
    origin. Row ``i`` of ``element_positions`` is element ``i``.
    """

    element_positions: NDArray[np.float64]
    n_az: int
    n_el: int
    spacing: Optional[float] = None

    def __post_init__(self):
        positions = np.array(self.element_positions, dtype=float).reshape(-1, 3)
        if len(positions) == 0:
            raise ValueError("Array layout has no elements.")
        if len(positions) != self.n_az * self.n_el:
            raise ValueError(
                f"Layout has {len(positions)} elements, expected {self.n_az}x{self.n_el}."
            )
        if not np.all(np.isfinite(positions)):
            raise ValueError("Element positions must be finite.")
        positions.setflags(write=False)
        object.__setattr__(self, "element_positions", positions)

    def __len__(self):
        return len(self.element_positions)

    def __str__(self):
        return f"{self.n_az}x{self.n_el}"

    @property
    def num_elements(self) -> int:
        return len(self)

    @property
    def centroid(self) -> NDArray[np.float64]:
        return self.element_positions.mean(axis=0)


def make_upa(n_az: int, n_el: int, spacing: float) -> ArrayLayout:
    """Build a centred uniform planar array in the local xz plane.

    Parameters
    ----------
    n_az : int
        Elements along x (azimuth).
    n_el : int
        Elements along z (elevation).
    spacing : float
        Element pitch in meters, usually half a wavelength.

    Returns
    -------
    ArrayLayout
        Elements ordered elevation row by row, azimuth fastest.
    """
    if int(n_az) < 1 or int(n_el) < 1:
        raise ValueError(f"Invalid array dimensions {n_az}x{n_el} passed.")
    if not (np.isfinite(spacing) and spacing > 0):
        raise ValueError(f"Invalid element spacing {spacing} passed.")
    n_az, n_el = int(n_az), int(n_el)

    x = (np.arange(n_az) - (n_az - 1) / 2) * spacing
    z = (np.arange(n_el) - (n_el - 1) / 2) * spacing
    zz, xx = np.meshgrid(z, x, indexing="ij")
    positions = np.column_stack([xx.ravel(), np.zeros(n_az * n_el), zz.ravel()])
    return ArrayLayout(positions, n_az=n_az, n_el=n_el, spacing=float(spacing))
