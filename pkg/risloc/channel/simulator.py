from __future__ import annotations
from typing import TYPE_CHECKING, List, Optional, Sequence
import logging
import math

import numpy as np
from numpy.typing import NDArray

from risloc.types import BeatCube, Direction, SweepPlan, Waveform
from risloc.channel._paths import PathKinds, PathSpec
from risloc.channel._surface import ReconfigurableSurface

if TYPE_CHECKING:
    from risloc.io import ScenarioConfig

logger = logging.getLogger(__name__)

PHASE_STREAM = 0
GEOMETRY_STREAM = 1
NOISE_STREAM_OFFSET = 2


def run_streams(seed: int, num_angles: int) -> List[np.random.SeedSequence]:
    """Independent random streams of one run.

    Stream 0 draws path phases, stream 1 is reserved for study geometry and
    stream 2 + m draws the noise of sweep angle m, so every slice is
    reproducible on its own.
    """
    return np.random.SeedSequence(seed).spawn(NOISE_STREAM_OFFSET + num_angles)


def path_tone(path: PathSpec, waveform: Waveform) -> NDArray[np.complex128]:
    """The unit-gain N x K beat tone of a path.

    exp(-j 2 pi (S tau + f_c nu) n T_s) exp(-j 2 pi f_c nu k T)
    """
    n = np.arange(waveform.samples_per_chirp)
    k = np.arange(waveform.chirps_per_frame)
    beat = waveform.slope * path.delay + waveform.carrier_freq * path.doppler
    fast_time = np.exp(-2j * math.pi * beat * n * waveform.sample_period)
    slow_time = np.exp(-2j * math.pi * waveform.carrier_freq * path.doppler * k * waveform.chirp_duration)
    return np.outer(fast_time, slow_time)


def _check_finite_gain(path: PathSpec):
    if not math.isfinite(path.gain_sq):
        raise ValueError(f"Non-finite gain {path.gain_sq} on {path.kind} path.")


class BeatSignalModel:
    """This class renders beat-signal cubes for a fixed scene and samples
    noisy realisations of them.

    Parameters
    ----------
    waveform : Waveform
        Chirp parameters.
    plan : SweepPlan
        RIS sweep directions.
    surface : ReconfigurableSurface
        RIS beam model applied to the loopback path.
    aod : Direction
        True AOD at the RIS.
    ris_path : Optional[PathSpec]
        The RIS loopback path (l = 0), None for scenes without it.
    scatter_paths : Sequence[PathSpec]
        Paths l > 0, unaffected by the RIS phases.
    noise_power : float
        Per-sample complex noise power in watts.
    leakage : Optional[PathSpec]
        Tx-to-Rx leakage added to every frame.
    """

    def __init__(
        self,
        waveform: Waveform,
        plan: SweepPlan,
        surface: ReconfigurableSurface,
        aod: Direction,
        ris_path: Optional[PathSpec] = None,
        scatter_paths: Sequence[PathSpec] = (),
        noise_power: float = 0.0,
        leakage: Optional[PathSpec] = None,
    ):
        self.waveform = waveform
        self.plan = plan
        self.surface = surface
        self.aod = aod
        self.ris_path = ris_path
        self.scatter_paths = list(scatter_paths)
        self.noise_power = noise_power
        self.leakage = leakage

        for path in self.paths:
            _check_finite_gain(path)
        if not (math.isfinite(noise_power) and noise_power >= 0):
            raise ValueError(f"Invalid noise power {noise_power} passed.")

    @classmethod
    def from_scenario(cls, scenario: ScenarioConfig) -> BeatSignalModel:
        return cls(
            waveform=scenario.waveform,
            plan=scenario.sweep_plan(),
            surface=scenario.surface(),
            aod=scenario.ground_truth().aod,
            ris_path=scenario.ris_path(),
            scatter_paths=scenario.scatter_paths(),
            noise_power=scenario.link_budget_model().noise_power,
            leakage=scenario.leakage_path(),
        )

    @property
    def paths(self) -> List[PathSpec]:
        ris = [] if self.ris_path is None else [self.ris_path]
        leak = [] if self.leakage is None else [self.leakage]
        return ris + self.scatter_paths + leak

    def _phases(self, stream: np.random.SeedSequence) -> List[float]:
        rng = np.random.default_rng(stream)
        paths = ([] if self.ris_path is None else [self.ris_path]) + self.scatter_paths
        draws = rng.uniform(0.0, 2 * math.pi, size=len(paths))
        return [
            float(draw) if path.phase is None else path.phase
            for path, draw in zip(paths, draws)
        ]

    def noiseless(self, phases: Optional[Sequence[float]] = None) -> BeatCube:
        """The deterministic part of the cube.

        Parameters
        ----------
        phases : Optional[Sequence[float]]
            Phases of the RIS path followed by the scatter paths. If None,
            each path's own phase is used (0 when unset).
        """
        paths = ([] if self.ris_path is None else [self.ris_path]) + self.scatter_paths
        phases = [path.phase or 0.0 for path in paths] if phases is None else list(phases)
        cube = BeatCube.zeros(self.waveform, self.plan)
        samples = cube.samples

        offset = 0
        if self.ris_path is not None:
            gains = self.surface.beam_gains(self.aod, self.plan)
            tone = self.ris_path.amplitude(phases[0]) * path_tone(self.ris_path, self.waveform)
            samples += tone[:, :, None] * gains[None, None, :]
            offset = 1
        for path, phase in zip(self.scatter_paths, phases[offset:]):
            tone = path.amplitude(phase) * path_tone(path, self.waveform)
            samples += tone[:, :, None]

        cube = cube.with_samples(samples)
        if self.leakage is not None:
            cube = add_leakage(cube, self.leakage.gain_sq, self.leakage.delay)
        return cube

    def sample(self, seed: int) -> BeatCube:
        """Draw one noisy cube; identical seeds give bit-identical cubes."""
        streams = run_streams(seed, len(self.plan))
        cube = self.noiseless(self._phases(streams[PHASE_STREAM]))
        if self.noise_power == 0:
            return cube

        samples = cube.samples.copy()
        n, k, _ = samples.shape
        scale = math.sqrt(self.noise_power / 2)
        for m in range(len(self.plan)):
            rng = np.random.default_rng(streams[NOISE_STREAM_OFFSET + m])
            samples[:, :, m] += scale * (
                rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
            )
        logger.debug("Sampled cube %s with seed %s", cube, seed)
        return cube.with_samples(samples)


def synthesize(scenario: ScenarioConfig, rng_seed: int) -> BeatCube:
    """Synthesize the noisy beat-signal cube of a validated scenario."""
    return BeatSignalModel.from_scenario(scenario).sample(rng_seed)


def add_leakage(cube: BeatCube, gain_sq: float, delay: float) -> BeatCube:
    """Add a static leakage tone at ``delay`` to every sweep angle."""
    path = PathKinds.Leakage(gain_sq=gain_sq, delay=delay)
    _check_finite_gain(path)
    if gain_sq == 0:
        return cube
    tone = path.amplitude() * path_tone(path, cube.waveform)
    return cube.with_samples(cube.samples + tone[:, :, None])
