import numpy as np
from numpy.typing import NDArray

from risloc.types import Direction, SweepPlan
from risloc.geometry import ris_phase_profile, wavenumber_vector
from risloc.channel._surface import ReconfigurableSurface


class ReflectiveSurface(ReconfigurableSurface):
    r"""A single-array RIS that reflects with the phase profile omega_m.

    The gain of the m-th sweep angle is the quadratic form

        a(theta)^T diag(omega_m) a(theta) = sum_i a_i(theta)^2 omega_{m,i}

    which equals N_RIS when phi_m = theta.
    """

    name = "reflective"

    def phase_profiles(self, plan: SweepPlan) -> NDArray[np.complex128]:
        """Stacked omega_m, shape (M, N_RIS)."""
        return np.stack(
            [ris_phase_profile(self.layout, phi, self.wavelength) for phi in plan]
        )

    def beam_gains(self, aod: Direction, plan: SweepPlan) -> NDArray[np.complex128]:
        steering = self.steering(aod)
        return self.phase_profiles(plan) @ (steering * steering)


class SplitArraySurface(ReconfigurableSurface):
    """An active RIS emulated with identical receive and transmit arrays.

    The receive beam stays on the true AOD, omega_Rx = exp(-j X^T g(theta)),
    while the transmit beam sweeps, omega_Tx = exp(-j X^T g(phi_m)). The product
    of the two array gains is divided by N_RIS so the matched gain is N_RIS,
    the same scale as the reflective model.
    """

    name = "split"

    def _single_pass_profiles(self, plan: SweepPlan) -> NDArray[np.complex128]:
        positions = self.layout.element_positions
        return np.stack(
            [np.exp(-1j * (positions @ wavenumber_vector(phi, self.wavelength))) for phi in plan]
        )

    def beam_gains(self, aod: Direction, plan: SweepPlan) -> NDArray[np.complex128]:
        steering = self.steering(aod)
        receive_gain = np.sum(steering * np.conj(steering))
        transmit_gains = self._single_pass_profiles(plan) @ steering
        return receive_gain * transmit_gains / self.num_elements


SURFACES = {cls.name: cls for cls in (ReflectiveSurface, SplitArraySurface)}


def make_surface(kind: str, layout, wavelength: float) -> ReconfigurableSurface:
    try:
        return SURFACES[kind](layout=layout, wavelength=wavelength)
    except KeyError:
        raise ValueError(
            f"Unknown surface kind {kind!r}; expected one of {sorted(SURFACES)}."
        ) from None
