"""Single-run diagnostics: the delay-velocity map, the beam-power profile and
the distance profile of the selected beam.
"""
from __future__ import annotations
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional
import logging
import math

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from scipy.ndimage import maximum_filter
from scipy.signal import find_peaks

from risloc.channel import synthesize
from risloc.dsp import DelayDopplerMap, SweepResult, estimate, frame_map
from risloc.io.config import ScenarioConfig
from risloc.io.csv_out import emit_csv, sibling, write_table

logger = logging.getLogger(__name__)

# Floor for converting zero power to decibels.
_POWER_FLOOR = 1e-300


def to_db(power: NDArray) -> NDArray[np.float64]:
    return 10 * np.log10(np.maximum(power, _POWER_FLOOR))


def dominant_peaks(
    profile_db: NDArray, searchable: Optional[NDArray] = None, dynamic_range_db: float = 20.0
) -> NDArray[np.int64]:
    """Indices of searchable local maxima within ``dynamic_range_db`` of the strongest.

    Parameters
    ----------
    profile_db : NDArray
        1D power profile in dB.
    searchable : Optional[NDArray]
        Boolean mask; masked bins never count as peaks.
    dynamic_range_db : float
        Peaks weaker than the strongest by more than this are dropped.

    Returns
    -------
    NDArray[np.int64]
        Ascending peak indices.
    """
    profile_db = np.asarray(profile_db, dtype=float)
    searchable = np.ones(profile_db.shape, dtype=bool) if searchable is None else np.asarray(searchable)
    if dynamic_range_db < 0:
        raise ValueError(f"Invalid dynamic range {dynamic_range_db} passed.")
    if not np.any(searchable):
        return np.array([], dtype=np.int64)
    filled = np.where(searchable, profile_db, np.min(profile_db[searchable]))
    peaks, _ = find_peaks(filled)
    peaks = peaks[searchable[peaks]]
    if peaks.size == 0:
        return peaks.astype(np.int64)
    strongest = np.max(filled[peaks])
    return peaks[filled[peaks] >= strongest - dynamic_range_db].astype(np.int64)


def largest_peaks(zmap: DelayDopplerMap, count: int = 3) -> pd.DataFrame:
    """The ``count`` strongest 2D local maxima of a map, strongest first.

    A bin is a local maximum when it is the largest within two resolution
    cells along each axis, which keeps window sidelobes out of the list.
    """
    power_db = to_db(zmap.power)
    n, k = zmap.waveform.samples_per_chirp, zmap.waveform.chirps_per_frame
    size = (
        2 * math.ceil(2 * zmap.plan.n_dft / n) + 1,
        2 * math.ceil(2 * zmap.plan.k_dft / k) + 1,
    )
    local = maximum_filter(power_db, size=size, mode="nearest") == power_db
    rows, cols = np.nonzero(local)
    order = np.argsort(-power_db[rows, cols], kind="stable")[:count]
    rows, cols = rows[order], cols[order]
    return pd.DataFrame(
        {
            "distance_m": zmap.distances[rows],
            "velocity_mps": zmap.velocities[cols],
            "power_db": power_db[rows, cols],
            "searchable": zmap.searchable[rows],
        }
    )


@dataclass(frozen=True, eq=False)
class DiagnosticsBundle:
    """Tables describing one simulated sweep.

    ``delay_doppler`` holds the map of the selected beam in long form,
    ``distance_profile`` its zero-Doppler row and ``peaks`` the strongest 2D
    local maxima. ``profile_peaks`` indexes the dominant distance-profile peaks.
    """

    result: SweepResult
    delay_doppler: pd.DataFrame
    distance_profile: pd.DataFrame
    peaks: pd.DataFrame
    profile_peaks: NDArray[np.int64]

    @property
    def beam_profile(self) -> pd.DataFrame:
        return self.result.to_frame()

    @property
    def profile_peak_distances(self) -> NDArray[np.float64]:
        return self.distance_profile["distance_m"].to_numpy()[self.profile_peaks]


def _map_table(
    zmap: DelayDopplerMap, max_distance: Optional[float], max_velocity: Optional[float]
) -> pd.DataFrame:
    rows = np.ones(zmap.plan.n_dft, dtype=bool)
    cols = np.ones(zmap.plan.k_dft, dtype=bool)
    if max_distance is not None:
        rows &= zmap.distances <= max_distance
    if max_velocity is not None:
        cols &= np.abs(zmap.velocities) <= max_velocity
    distances, velocities = np.meshgrid(
        zmap.distances[rows], zmap.velocities[cols], indexing="ij"
    )
    return pd.DataFrame(
        {
            "distance_m": distances.ravel(),
            "velocity_mps": velocities.ravel(),
            "power_db": to_db(zmap.power[np.ix_(rows, cols)]).ravel(),
        }
    )


def diagnostic_run(
    scenario: ScenarioConfig,
    seed: int = 0,
    max_distance: Optional[float] = None,
    max_velocity: Optional[float] = 1.0,
    num_peaks: int = 3,
    dynamic_range_db: float = 20.0,
) -> DiagnosticsBundle:
    """Simulate and estimate one sweep, keeping the intermediate spectra.

    Parameters
    ----------
    scenario : ScenarioConfig
        The scene to simulate.
    seed : int
        Run seed.
    max_distance, max_velocity : Optional[float]
        Crop of the emitted map; None keeps the whole axis.
    num_peaks : int
        Number of 2D peaks to list.
    dynamic_range_db : float
        Range below the strongest profile peak within which peaks count as dominant.
    """
    cube = synthesize(scenario, seed)
    config = scenario.pipeline_config()
    result = estimate(cube, config)
    zmap = frame_map(cube[result.selected], cube.waveform, config)

    column = zmap.zero_doppler_index
    profile_db = to_db(zmap.power[:, column])
    distance_profile = pd.DataFrame(
        {
            "distance_m": zmap.distances,
            "delay_s": zmap.delays,
            "power_db": profile_db,
            "searchable": zmap.searchable,
        }
    )
    profile_peaks = dominant_peaks(profile_db, zmap.searchable, dynamic_range_db)
    peaks = largest_peaks(zmap, num_peaks)
    logger.info(
        "Beam %d selected; profile peaks at %s m",
        result.selected,
        np.round(zmap.distances[profile_peaks], 3).tolist(),
    )
    return DiagnosticsBundle(
        result=result,
        delay_doppler=_map_table(zmap, max_distance, max_velocity),
        distance_profile=distance_profile,
        peaks=peaks,
        profile_peaks=profile_peaks,
    )


@emit_csv.register
def _(result: DiagnosticsBundle, path) -> List[Path]:
    return [
        write_table(result.delay_doppler, sibling(path, "map")),
        write_table(result.beam_profile, sibling(path, "beam_profile")),
        write_table(result.distance_profile, sibling(path, "distance_profile")),
    ]
