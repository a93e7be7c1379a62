from abc import ABC, abstractmethod

import numpy as np
from numpy.typing import NDArray


class WindowFunction(ABC):
    """An abstract base class for taper windows."""

    name = "window"

    def __init__(self, length: int):
        self._check_valid_length(length=length)
        self.length = int(length)

    def __str__(self) -> str:
        return f"{self.name}_{self.length}"

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other):
        if isinstance(other, WindowFunction):
            return self.name == other.name and self.length == other.length
        return NotImplemented

    def __hash__(self):
        return hash((self.name, self.length))

    def _check_valid_length(self, length: int):
        """Private function to check the window length.

        Parameters
        ----------
        length : int
            Number of samples A.

        Raises
        -------
        ValueError
            If length < 1
        """
        if int(length) < 1:
            raise ValueError(f"Invalid window length {length} passed. ")

    @abstractmethod
    def vector(self) -> NDArray[np.float64]:
        """The window samples w_A(a), a = 0 ... A - 1."""


class HannWindow(WindowFunction):
    """The periodic Hann window w_A(a) = sin^2(a pi / A)."""

    name = "hann"

    def vector(self) -> NDArray[np.float64]:
        return np.sin(np.arange(self.length) * np.pi / self.length) ** 2


class RectangularWindow(WindowFunction):
    """No taper; every sample weighted by one."""

    name = "rectangular"

    def vector(self) -> NDArray[np.float64]:
        return np.ones(self.length)


WINDOWS = {cls.name: cls for cls in (HannWindow, RectangularWindow)}


def make_window(kind: str, length: int) -> WindowFunction:
    try:
        return WINDOWS[kind](length=length)
    except KeyError:
        raise ValueError(
            f"Unknown window kind {kind!r}; expected one of {sorted(WINDOWS)}."
        ) from None
