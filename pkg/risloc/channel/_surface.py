from abc import ABC, abstractmethod

import numpy as np
from numpy.typing import NDArray

from risloc.types import Direction, SweepPlan
from risloc.geometry import ArrayLayout, steering_vector


class ReconfigurableSurface(ABC):
    "An abstract base class for RIS beam models."

    name = "RIS"

    def __init__(self, layout: ArrayLayout, wavelength: float):
        self.layout = layout
        self.wavelength = wavelength

    def __str__(self) -> str:
        return f"{self.name}_{self.layout.n_az}x{self.layout.n_el}"

    @property
    def num_elements(self) -> int:
        return len(self.layout)

    def steering(self, direction: Direction) -> NDArray[np.complex128]:
        return steering_vector(self.layout, direction, self.wavelength)

    @abstractmethod
    def beam_gains(self, aod: Direction, plan: SweepPlan) -> NDArray[np.complex128]:
        """The complex beam gain of the RIS path for every sweep angle of the plan."""

    def beam_gain(self, aod: Direction, sweep_direction: Direction) -> complex:
        """The complex beam gain for a single sweep direction."""
        return complex(self.beam_gains(aod, SweepPlan(angles=(sweep_direction,)))[0])
