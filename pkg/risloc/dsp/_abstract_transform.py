from abc import ABC, abstractmethod

from numpy.typing import NDArray

from risloc.types import Waveform
from risloc.dsp.spectrum import DftPlan


class DelayDopplerTransform(ABC):
    """An abstract class for evaluators of the 2D delay-Doppler DFT."""

    name = "Transform"

    def __str__(self) -> str:
        return f"{self.name}"

    @abstractmethod
    def transform(self, frame: NDArray, plan: DftPlan, waveform: Waveform) -> NDArray:
        """Evaluate z(tau, nu) on the plan's grid.

        Parameters
        ----------
        frame : NDArray
            Windowed frame of shape (N, K), optionally already zero padded
            to (N_DFT, K_DFT).
        plan : DftPlan
            Transform sizes.
        waveform : Waveform
            Chirp parameters defining the grid values.

        Returns
        -------
        NDArray
            Complex map of shape (N_DFT, K_DFT), delay ascending along axis 0 and
            the Doppler axis centred (ascending nu) along axis 1.
        """
