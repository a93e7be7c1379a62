from __future__ import annotations
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.transform import Rotation


@dataclass(frozen=True)
class Orientation:
    """A proper rotation mapping the array's local frame to the global frame."""

    rotation: NDArray[np.float64] = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        rotation = np.array(self.rotation, dtype=float)
        if rotation.shape != (3, 3) or not np.all(np.isfinite(rotation)):
            raise ValueError("Orientation must be a finite 3x3 matrix.")
        if not np.allclose(rotation.T @ rotation, np.eye(3), rtol=0, atol=1e-12):
            raise ValueError("Orientation columns are not orthonormal.")
        if np.linalg.det(rotation) <= 0:
            raise ValueError("Orientation must have determinant +1.")
        rotation.setflags(write=False)
        object.__setattr__(self, "rotation", rotation)

    def __eq__(self, other):
        if isinstance(other, Orientation):
            return bool(np.array_equal(self.rotation, other.rotation))
        return NotImplemented

    def __hash__(self):
        return hash(self.rotation.tobytes())

    @classmethod
    def identity(cls) -> Orientation:
        return cls(np.eye(3))

    @classmethod
    def facing(cls, normal: Sequence[float]) -> Orientation:
        """Orientation whose array normal (local +y) points along ``normal``.

        Local +z stays as close to global +z as possible; when the normal is
        vertical, global +x is used as the reference instead.
        """
        y_axis = np.asarray(normal, dtype=float)
        length = np.linalg.norm(y_axis)
        if not np.isfinite(length) or length == 0:
            raise ValueError(f"Invalid array normal {normal} passed.")
        y_axis = y_axis / length
        reference = np.array([0.0, 0.0, 1.0])
        if abs(y_axis @ reference) > 1 - 1e-9:
            reference = np.array([1.0, 0.0, 0.0])
        z_axis = reference - (reference @ y_axis) * y_axis
        z_axis /= np.linalg.norm(z_axis)
        x_axis = np.cross(y_axis, z_axis)
        return cls(np.column_stack([x_axis, y_axis, z_axis]))

    @classmethod
    def from_euler(cls, seq: str, angles, degrees: bool = False) -> Orientation:
        return cls(Rotation.from_euler(seq, angles, degrees=degrees).as_matrix())

    @property
    def normal(self) -> NDArray[np.float64]:
        return self.rotation[:, 1].copy()

    def to_global(self, local: NDArray) -> NDArray:
        return self.rotation @ np.asarray(local, dtype=float)

    def to_local(self, vector: NDArray) -> NDArray:
        return self.rotation.T @ np.asarray(vector, dtype=float)
