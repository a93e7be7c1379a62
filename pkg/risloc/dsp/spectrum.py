from __future__ import annotations
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import TYPE_CHECKING, Optional, Tuple
import logging

import numpy as np
from numpy.typing import NDArray

from risloc.types import SPEED_OF_LIGHT, Waveform
from risloc.dsp.windows import WindowFunction

if TYPE_CHECKING:
    from risloc.dsp._abstract_transform import DelayDopplerTransform

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DftPlan:
    """Zero-padded transform sizes and the grids they induce.

    The delay axis covers one unambiguous beat period,
    tau_n' = n' / (S N_DFT T_s) for n' = 0 ... N_DFT - 1. The Doppler axis is
    centred: nu_k' = k' / (f_c K_DFT T) for k' = -(K_DFT // 2) ... upward.
    """

    n_dft: int
    k_dft: int

    def __post_init__(self):
        if int(self.n_dft) < 1 or int(self.k_dft) < 1:
            raise ValueError(f"Invalid transform sizes {self.n_dft}x{self.k_dft} passed.")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_dft, self.k_dft

    def check_frame_shape(self, shape: Tuple[int, ...]):
        if len(shape) != 2:
            raise ValueError(f"Expected a 2D frame, got shape {shape}.")
        if shape[0] > self.n_dft or shape[1] > self.k_dft:
            raise ValueError(
                f"Transform plan {self.n_dft}x{self.k_dft} is smaller than the frame {shape[0]}x{shape[1]}."
            )

    def check_frame(self, frame: NDArray):
        self.check_frame_shape(np.shape(frame))

    def delays(self, waveform: Waveform) -> NDArray[np.float64]:
        return np.arange(self.n_dft) * self.delay_bin(waveform)

    def doppler_indices(self) -> NDArray[np.int64]:
        return np.arange(self.k_dft) - self.k_dft // 2

    def dopplers(self, waveform: Waveform) -> NDArray[np.float64]:
        return self.doppler_indices() / (
            waveform.carrier_freq * self.k_dft * waveform.chirp_duration
        )

    def delay_bin(self, waveform: Waveform) -> float:
        return waveform.max_delay / self.n_dft

    def doppler_bin(self, waveform: Waveform) -> float:
        return 1.0 / (waveform.carrier_freq * self.k_dft * waveform.chirp_duration)

    def distance_bin(self, waveform: Waveform) -> float:
        return self.delay_bin(waveform) * SPEED_OF_LIGHT / 2

    def velocity_bin(self, waveform: Waveform) -> float:
        return self.doppler_bin(waveform) * SPEED_OF_LIGHT / 2


@dataclass(frozen=True, eq=False)
class DelayDopplerMap:
    """z_m(tau, nu) on a plan's grid.

    ``searchable`` flags the delay rows that take part in peak searches; the
    distance gate clears it for short ranges.
    """

    values: NDArray[np.complex128]
    plan: DftPlan
    waveform: Waveform
    searchable: Optional[NDArray[np.bool_]] = field(default=None)

    def __post_init__(self):
        if np.shape(self.values) != self.plan.shape:
            raise ValueError(
                f"Map shape {np.shape(self.values)} does not match the plan {self.plan.shape}."
            )
        if self.searchable is None:
            object.__setattr__(self, "searchable", np.ones(self.plan.n_dft, dtype=bool))
        elif np.shape(self.searchable) != (self.plan.n_dft,):
            raise ValueError("Search mask must have one entry per delay bin.")

    @cached_property
    def power(self) -> NDArray[np.float64]:
        """|z|^2."""
        return np.abs(self.values) ** 2

    @property
    def delays(self) -> NDArray[np.float64]:
        return self.plan.delays(self.waveform)

    @property
    def dopplers(self) -> NDArray[np.float64]:
        return self.plan.dopplers(self.waveform)

    @property
    def distances(self) -> NDArray[np.float64]:
        return self.delays * SPEED_OF_LIGHT / 2

    @property
    def velocities(self) -> NDArray[np.float64]:
        return self.dopplers * SPEED_OF_LIGHT / 2

    @property
    def zero_doppler_index(self) -> int:
        return self.plan.k_dft // 2

    def doppler_index(self, doppler: float) -> int:
        return int(np.argmin(np.abs(self.dopplers - doppler)))


def window_frame(
    frame: NDArray, spec_n: WindowFunction, spec_k: WindowFunction
) -> NDArray[np.complex128]:
    """Apply w_N w_K^T elementwise to an N x K frame."""
    frame = np.asarray(frame)
    if frame.ndim != 2 or frame.shape != (len(spec_n), len(spec_k)):
        raise ValueError(
            f"Window lengths {len(spec_n)}x{len(spec_k)} do not match the frame {frame.shape}."
        )
    return frame * np.outer(spec_n.vector(), spec_k.vector())


def zero_pad(frame: NDArray, plan: DftPlan) -> NDArray[np.complex128]:
    """Place the frame in the top-left block of an N_DFT x K_DFT zero array."""
    frame = np.asarray(frame)
    plan.check_frame(frame)
    padded = np.zeros(plan.shape, dtype=complex)
    padded[: frame.shape[0], : frame.shape[1]] = frame
    return padded


def delay_doppler_map(
    padded: NDArray,
    waveform: Waveform,
    plan: DftPlan,
    transform: Optional[DelayDopplerTransform] = None,
) -> DelayDopplerMap:
    """z(tau, nu) = sum_k sum_n Y'[n, k] exp(j2pi S tau n T_s) exp(j2pi f_c nu k T).

    A path with delay tau_l and Doppler nu_l peaks at (tau_l, nu_l). Frames
    smaller than the plan are zero padded by the transform.
    """
    if transform is None:
        from risloc.dsp.transforms import FastTransform

        transform = FastTransform()
    return DelayDopplerMap(transform.transform(padded, plan, waveform), plan, waveform)


def gate_min_distance(zmap: DelayDopplerMap, min_distance: float) -> DelayDopplerMap:
    """Exclude delay rows closer than ``min_distance`` from later searches."""
    if not (np.isfinite(min_distance) and min_distance >= 0):
        raise ValueError(f"Invalid gate distance {min_distance} passed.")
    searchable = zmap.searchable & (zmap.distances >= min_distance)
    return replace(zmap, searchable=searchable)


def peak_index(zmap: DelayDopplerMap) -> Tuple[int, int]:
    """(delay index, Doppler index) of the largest |z|^2 among searchable rows.

    Ties resolve to the smallest delay, then the smallest Doppler.
    """
    if not np.any(zmap.searchable):
        raise ValueError("Empty search region: every delay bin is gated.")
    rows = np.flatnonzero(zmap.searchable)
    power = zmap.power[rows]
    flat = int(np.argmax(power))
    row, col = np.unravel_index(flat, power.shape)
    return int(rows[row]), int(col)


def peak(zmap: DelayDopplerMap) -> Tuple[float, float]:
    """Grid coordinates (tau_m, nu_m) of the map's peak."""
    row, col = peak_index(zmap)
    return float(zmap.delays[row]), float(zmap.dopplers[col])


def average_power(zmap: DelayDopplerMap, delay: float, doppler: float, delta: float) -> float:
    """Mean |z(tau, nu_m)|^2 over searchable delay bins with |tau - tau_m| <= delta.

    The rectangular-rule form of (1 / 2 delta) * integral over [tau_m - delta, tau_m + delta].
    """
    if not (np.isfinite(delta) and delta > 0):
        raise ValueError(f"Invalid averaging half-width {delta} passed.")
    col = zmap.doppler_index(doppler)
    tolerance = 1e-9 * zmap.plan.delay_bin(zmap.waveform)
    rows = (np.abs(zmap.delays - delay) <= delta + tolerance) & zmap.searchable
    if not np.any(rows):
        raise ValueError(f"No delay bins within {delta} s of {delay} s.")
    return float(np.mean(zmap.power[rows, col]))
