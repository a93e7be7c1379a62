from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import math

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from risloc.types import SPEED_OF_LIGHT, BeatCube, Direction, SweepPlan, Waveform
from risloc.channel.link_budget import watts_to_dbm
from risloc.dsp.windows import WINDOWS, make_window
from risloc.dsp.spectrum import (
    DelayDopplerMap,
    DftPlan,
    average_power,
    delay_doppler_map,
    gate_min_distance,
    peak,
    window_frame,
)
from risloc.dsp.transforms import TRANSFORMS, make_transform
from risloc.dsp._abstract_transform import DelayDopplerTransform

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    """Settings of the window -> pad -> map -> gate -> peak -> power chain.

    Parameters
    ----------
    window : str
        Window kind applied along both fast and slow time.
    n_dft, k_dft : int
        Zero-padded transform sizes.
    delta : float
        Half-width of the beam-power averaging window in seconds.
    min_distance : float
        Distance gate in meters; shorter ranges never win a peak search.
    loopback_delay : float
        RIS loop-back delay subtracted before converting delay to distance.
    transform : str
        "fast" or "direct".
    workers : Optional[int]
        Worker threads handed to ``scipy.fft``.
    """

    window: str = "hann"
    n_dft: int = 1199
    k_dft: int = 4793
    delta: float = 0.33e-9
    min_distance: float = 1.0
    loopback_delay: float = 1.78e-9
    transform: str = "fast"
    workers: Optional[int] = None

    def __post_init__(self):
        self._check_valid_pipeline()

    def _check_valid_pipeline(self):
        if self.window not in WINDOWS:
            raise ValueError(f"Invalid pipeline parameter window={self.window!r} passed.")
        if self.transform not in TRANSFORMS:
            raise ValueError(f"Invalid pipeline parameter transform={self.transform!r} passed.")
        for name in ("n_dft", "k_dft"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"Invalid pipeline parameter {name}={getattr(self, name)} passed.")
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"Invalid pipeline parameter delta={self.delta} passed.")
        for name in ("min_distance", "loopback_delay"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"Invalid pipeline parameter {name}={value} passed.")

    def check_waveform(self, waveform: Waveform):
        """Raise if the transform sizes cannot hold a frame of ``waveform``."""
        if self.n_dft < waveform.samples_per_chirp:
            raise ValueError(
                f"Invalid pipeline parameter n_dft={self.n_dft} passed; "
                f"must be at least N={waveform.samples_per_chirp}."
            )
        if self.k_dft < waveform.chirps_per_frame:
            raise ValueError(
                f"Invalid pipeline parameter k_dft={self.k_dft} passed; "
                f"must be at least K={waveform.chirps_per_frame}."
            )

    def dft_plan(self) -> DftPlan:
        return DftPlan(n_dft=self.n_dft, k_dft=self.k_dft)

    def make_transform(self) -> DelayDopplerTransform:
        return make_transform(self.transform, workers=self.workers)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Per-angle peaks and beam powers of one sweep, plus the selected beam.

    ``selected`` is the 0-based index m_hat of the strongest beam.
    """

    plan: SweepPlan
    delays: NDArray[np.float64]
    dopplers: NDArray[np.float64]
    powers: NDArray[np.float64]
    selected: int
    loopback_delay: float = 0.0

    def __post_init__(self):
        size = len(self.plan)
        for name in ("delays", "dopplers", "powers"):
            if np.shape(getattr(self, name)) != (size,):
                raise ValueError(f"SweepResult {name} must hold one value per sweep angle.")
        if not 0 <= self.selected < size:
            raise ValueError(f"Selected beam {self.selected} outside 0:{size}.")

    def __len__(self) -> int:
        return len(self.plan)

    @property
    def delay(self) -> float:
        return float(self.delays[self.selected])

    @property
    def doppler(self) -> float:
        return float(self.dopplers[self.selected])

    @property
    def aod(self) -> Direction:
        return self.plan[self.selected]

    @property
    def distance(self) -> float:
        """d_hat = (tau_hat - tau_RB) c / 2, floored at zero."""
        return max(0.0, (self.delay - self.loopback_delay) * SPEED_OF_LIGHT / 2)

    @property
    def velocity(self) -> float:
        return self.doppler * SPEED_OF_LIGHT / 2

    @property
    def powers_dbm(self) -> NDArray[np.float64]:
        return np.array([watts_to_dbm(p) for p in self.powers])

    def to_frame(self) -> pd.DataFrame:
        """One row per sweep angle."""
        azimuths = np.degrees(self.plan.azimuths)
        elevations = np.degrees(self.plan.elevations)
        distances = np.maximum(0.0, (self.delays - self.loopback_delay) * SPEED_OF_LIGHT / 2)
        selected = np.zeros(len(self), dtype=bool)
        selected[self.selected] = True
        return pd.DataFrame(
            {
                "index": np.arange(len(self)),
                "azimuth_deg": azimuths,
                "elevation_deg": elevations,
                "delay_s": self.delays,
                "doppler": self.dopplers,
                "distance_m": distances,
                "velocity_mps": self.dopplers * SPEED_OF_LIGHT / 2,
                "power_w": self.powers,
                "power_dbm": self.powers_dbm,
                "selected": selected,
            }
        )


def frame_map(
    frame: NDArray,
    waveform: Waveform,
    config: PipelineConfig,
    transform: Optional[DelayDopplerTransform] = None,
) -> DelayDopplerMap:
    """The gated delay-Doppler map of one N x K frame."""
    transform = config.make_transform() if transform is None else transform
    windowed = window_frame(
        frame,
        make_window(config.window, waveform.samples_per_chirp),
        make_window(config.window, waveform.chirps_per_frame),
    )
    zmap = delay_doppler_map(windowed, waveform, config.dft_plan(), transform)
    return gate_min_distance(zmap, config.min_distance)


def angle_peak(
    frame: NDArray,
    waveform: Waveform,
    config: PipelineConfig,
    transform: Optional[DelayDopplerTransform] = None,
) -> Tuple[float, float, float]:
    """(tau_m, nu_m, P_ave_m) of one sweep angle."""
    zmap = frame_map(frame, waveform, config, transform)
    delay, doppler = peak(zmap)
    return delay, doppler, average_power(zmap, delay, doppler, config.delta)


def estimate(cube: BeatCube, config: Optional[PipelineConfig] = None) -> SweepResult:
    """Run the per-angle pipeline over every frame and select the strongest beam.

    Parameters
    ----------
    cube : BeatCube
        Beat-signal samples of a whole sweep.
    config : Optional[PipelineConfig]
        Pipeline settings, defaults when None.

    Returns
    -------
    SweepResult
        m_hat = argmax_m P_ave_m with ties going to the smallest m.
    """
    config = PipelineConfig() if config is None else config
    config.check_waveform(cube.waveform)
    transform = config.make_transform()
    logger.debug(
        "Estimating %r with %s on a %dx%d grid", cube, transform, config.n_dft, config.k_dft
    )

    delays = np.empty(len(cube))
    dopplers = np.empty(len(cube))
    powers = np.empty(len(cube))
    for m, frame in enumerate(cube.frames()):
        delays[m], dopplers[m], powers[m] = angle_peak(frame, cube.waveform, config, transform)
        logger.debug(
            "Angle %d: delay %.4g s, doppler %.4g, power %.4g W", m, delays[m], dopplers[m], powers[m]
        )

    result = SweepResult(
        plan=cube.plan,
        delays=delays,
        dopplers=dopplers,
        powers=powers,
        selected=int(np.argmax(powers)),
        loopback_delay=config.loopback_delay,
    )
    if result.delay < config.loopback_delay:
        logger.warning(
            "Peak delay %.4g s is below the loop-back delay; distance clamped to 0", result.delay
        )
    return result
