"""Scenario configuration: a tree of frozen dataclasses with reference defaults,
loaded from and dumped to YAML.
"""
from __future__ import annotations
from dataclasses import dataclass, field, fields, is_dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union, get_args, get_origin, get_type_hints
import logging
import math
import re

import numpy as np
import yaml

from risloc.types import SPEED_OF_LIGHT, Direction, Position3, SweepPlan, Waveform
from risloc.geometry import ArrayLayout, Orientation, direction_to_global, make_upa
from risloc.channel import (
    LinkBudget,
    PathKinds,
    PathSpec,
    ReconfigurableSurface,
    db_to_linear,
    dbm_to_watts,
    make_surface,
    ris_loopback_gain_sq,
    target_gain_sq,
)
from risloc.channel.surfaces import SURFACES
from risloc.dsp import PipelineConfig
from risloc.localization import GroundTruth
from risloc.io._atomic import atomic_path

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """A configuration value failed to parse or validate.

    ``field`` holds the dotted path of the offending entry, e.g. ``pipeline.n_dft``.
    """

    def __init__(self, field_path: str, message: str):
        self.field = field_path
        super().__init__(f"{field_path}: {message}")


def _finite(value: float, name: str, minimum: Optional[float] = None, strict: bool = False):
    if not math.isfinite(value):
        raise ConfigError(name, f"must be finite, got {value}")
    if minimum is not None and (value < minimum or (strict and value == minimum)):
        bound = ">" if strict else ">="
        raise ConfigError(name, f"must be {bound} {minimum}, got {value}")


@dataclass(frozen=True)
class SweepSettings:
    """Azimuth sweep of the RIS beam, in degrees."""

    azimuth_start_deg: float = -45.0
    azimuth_stop_deg: float = 45.0
    step_deg: float = 1.5
    elevation_deg: float = 0.0

    def __post_init__(self):
        for name in ("azimuth_start_deg", "azimuth_stop_deg", "elevation_deg"):
            _finite(getattr(self, name), f"sweep.{name}")
        _finite(self.step_deg, "sweep.step_deg", 0.0, strict=True)
        if self.azimuth_stop_deg < self.azimuth_start_deg:
            raise ConfigError("sweep.azimuth_stop_deg", "must not be below azimuth_start_deg")
        if not -90 <= self.elevation_deg <= 90:
            raise ConfigError("sweep.elevation_deg", f"must lie in [-90, 90], got {self.elevation_deg}")

    def plan(self) -> SweepPlan:
        return SweepPlan.azimuth_sweep(
            self.azimuth_start_deg, self.azimuth_stop_deg, self.step_deg, self.elevation_deg
        )


@dataclass(frozen=True)
class GeometrySettings:
    """Scene layout.

    ``ris_normal`` None points the array at the UE. ``spacing`` None means half
    a wavelength. ``ue_velocity`` is the UE's radial velocity relative to the
    RIS, positive when receding.
    """

    ue_position: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    ris_position: Tuple[float, float, float] = (0.0, 13.38, 0.0)
    ris_normal: Optional[Tuple[float, float, float]] = None
    n_az: int = 16
    n_el: int = 4
    spacing: Optional[float] = None
    surface: str = "reflective"
    ue_velocity: float = 0.0

    def __post_init__(self):
        for name in ("ue_position", "ris_position", "ris_normal"):
            value = getattr(self, name)
            if value is None:
                continue
            try:
                point = Position3.from_array(value)
            except (TypeError, ValueError) as error:
                raise ConfigError(f"geometry.{name}", str(error)) from error
            if not point.is_finite():
                raise ConfigError(f"geometry.{name}", f"expected finite coordinates, got {value}")
            object.__setattr__(self, name, tuple(point))
        if self.ris_normal is not None and not any(self.ris_normal):
            raise ConfigError("geometry.ris_normal", "must be non-zero")
        for name in ("n_az", "n_el"):
            if getattr(self, name) < 1:
                raise ConfigError(f"geometry.{name}", f"must be >= 1, got {getattr(self, name)}")
        if self.spacing is not None:
            _finite(self.spacing, "geometry.spacing", 0.0, strict=True)
        if self.surface not in SURFACES:
            raise ConfigError("geometry.surface", f"unknown surface {self.surface!r}")
        _finite(self.ue_velocity, "geometry.ue_velocity")


@dataclass(frozen=True)
class LinkBudgetSettings:
    """Link budget in decibel units. ``noise_power_dbm`` None gives a noiseless scene."""

    tx_power_dbm: float = 20.0
    combined_gain_dbi: float = 4.7712
    ris_loop_factor_db: float = 45.532
    noise_power_dbm: Optional[float] = -63.64

    def __post_init__(self):
        for name in ("tx_power_dbm", "combined_gain_dbi", "ris_loop_factor_db"):
            _finite(getattr(self, name), f"link_budget.{name}")
        if self.noise_power_dbm is not None:
            _finite(self.noise_power_dbm, "link_budget.noise_power_dbm")


@dataclass(frozen=True)
class TargetSettings:
    """An extra passive scatterer at ``distance`` meters from the radar."""

    distance: float
    velocity: float = 0.0
    rcs: float = 1.0

    def __post_init__(self):
        _finite(self.distance, "paths.targets.distance", 0.0, strict=True)
        _finite(self.velocity, "paths.targets.velocity")
        _finite(self.rcs, "paths.targets.rcs", 0.0)


@dataclass(frozen=True)
class PathSettings:
    """Propagation paths besides the RIS retransmission.

    ``structural_rcs`` 0 removes the structural reflection of the RIS.
    """

    loopback_delay: float = 1.78e-9
    structural_rcs: float = 19.0
    leakage: bool = False
    leakage_power_dbm: float = -60.0
    leakage_distance: float = 0.1
    random_phases: bool = True
    targets: Tuple[TargetSettings, ...] = ()

    def __post_init__(self):
        _finite(self.loopback_delay, "paths.loopback_delay", 0.0)
        _finite(self.structural_rcs, "paths.structural_rcs", 0.0)
        _finite(self.leakage_power_dbm, "paths.leakage_power_dbm")
        _finite(self.leakage_distance, "paths.leakage_distance", 0.0)
        object.__setattr__(
            self,
            "targets",
            tuple(t if isinstance(t, TargetSettings) else TargetSettings(**t) for t in self.targets),
        )


@dataclass(frozen=True)
class PipelineSettings:
    """Estimation settings; the loop-back delay comes from ``paths``."""

    window: str = "hann"
    n_dft: int = 1199
    k_dft: int = 4793
    delta: float = 0.33e-9
    min_distance: float = 1.0
    transform: str = "fast"
    workers: Optional[int] = None

    def __post_init__(self):
        try:
            self.to_pipeline(0.0)
        except ValueError as err:
            match = re.search(r"parameter (\w+)=", str(err))
            name = match.group(1) if match else "window"
            raise ConfigError(f"pipeline.{name}", str(err)) from err

    def to_pipeline(self, loopback_delay: float) -> PipelineConfig:
        return PipelineConfig(
            window=self.window,
            n_dft=self.n_dft,
            k_dft=self.k_dft,
            delta=self.delta,
            min_distance=self.min_distance,
            loopback_delay=loopback_delay,
            transform=self.transform,
            workers=self.workers,
        )


@dataclass(frozen=True)
class ScenarioConfig:
    """The full parameter set of a simulated scene and its estimation pipeline.

    Defaults give the reference scene: a 16x4 RIS at [0, 13.38, 0] facing a radar at
    the origin, 60 GHz carrier, 3.4345 GHz sweep, N = 600, K = 128,
    sigma_N^2 = -63.64 dBm, tau_RB = 1.78 ns, N_DFT = 1199, K_DFT = 4793.
    """

    waveform: Waveform = field(default_factory=Waveform)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    geometry: GeometrySettings = field(default_factory=GeometrySettings)
    link_budget: LinkBudgetSettings = field(default_factory=LinkBudgetSettings)
    paths: PathSettings = field(default_factory=PathSettings)
    pipeline: PipelineSettings = field(default_factory=PipelineSettings)

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Cross-section checks; each section validates its own fields."""
        if self.pipeline.n_dft < self.waveform.samples_per_chirp:
            raise ConfigError(
                "pipeline.n_dft",
                f"{self.pipeline.n_dft} is below N={self.waveform.samples_per_chirp}",
            )
        if self.pipeline.k_dft < self.waveform.chirps_per_frame:
            raise ConfigError(
                "pipeline.k_dft",
                f"{self.pipeline.k_dft} is below K={self.waveform.chirps_per_frame}",
            )
        if self.ris_distance == 0:
            raise ConfigError("geometry.ue_position", "UE and RIS positions coincide")
        truth = self.ground_truth()
        if not truth.aod.is_valid() or abs(truth.aod.azimuth) >= math.pi / 2:
            raise ConfigError("geometry.ris_normal", "the UE lies behind the RIS")

    # Derived objects

    @property
    def ris_distance(self) -> float:
        return (Position3(*self.geometry.ue_position) - self.geometry.ris_position).norm()

    def sweep_plan(self) -> SweepPlan:
        return self.sweep.plan()

    def layout(self) -> ArrayLayout:
        spacing = self.geometry.spacing
        spacing = self.waveform.wavelength / 2 if spacing is None else spacing
        return make_upa(self.geometry.n_az, self.geometry.n_el, spacing)

    def orientation(self) -> Orientation:
        normal = self.geometry.ris_normal
        if normal is None:
            normal = (Position3(*self.geometry.ue_position) - self.geometry.ris_position).as_array()
        return Orientation.facing(normal)

    def surface(self) -> ReconfigurableSurface:
        return make_surface(self.geometry.surface, self.layout(), self.waveform.wavelength)

    def link_budget_model(self) -> LinkBudget:
        settings = self.link_budget
        noise = 0.0 if settings.noise_power_dbm is None else dbm_to_watts(settings.noise_power_dbm)
        return LinkBudget(
            tx_power=dbm_to_watts(settings.tx_power_dbm),
            combined_gain=db_to_linear(settings.combined_gain_dbi),
            ris_loop_factor=db_to_linear(settings.ris_loop_factor_db),
            noise_power=noise,
            rcs_list=(self.paths.structural_rcs, *[t.rcs for t in self.paths.targets]),
        )

    def ground_truth(self) -> GroundTruth:
        return GroundTruth.from_positions(
            Position3(*self.geometry.ue_position),
            Position3(*self.geometry.ris_position),
            self.orientation(),
            velocity=self.geometry.ue_velocity,
        )

    def _phase(self) -> Optional[float]:
        return None if self.paths.random_phases else 0.0

    def ris_path(self) -> PathSpec:
        gain_sq = ris_loopback_gain_sq(
            self.link_budget_model(), self.ris_distance, self.waveform.wavelength
        )
        return PathKinds.RisLoopback(
            self.ris_distance,
            gain_sq,
            loopback_delay=self.paths.loopback_delay,
            velocity=self.geometry.ue_velocity,
            phase=self._phase(),
        )

    def scatter_paths(self) -> List[PathSpec]:
        """The structural reflection (when its RCS is positive) and the extra targets."""
        budget = self.link_budget_model()
        wavelength = self.waveform.wavelength
        paths = []
        if self.paths.structural_rcs > 0:
            gain_sq = target_gain_sq(budget, self.paths.structural_rcs, self.ris_distance, wavelength)
            paths.append(
                PathKinds.Target(self.ris_distance, gain_sq, self.geometry.ue_velocity, self._phase())
            )
        for target in self.paths.targets:
            gain_sq = target_gain_sq(budget, target.rcs, target.distance, wavelength)
            paths.append(PathKinds.Target(target.distance, gain_sq, target.velocity, self._phase()))
        return paths

    def leakage_path(self) -> Optional[PathSpec]:
        if not self.paths.leakage:
            return None
        delay = 2 * self.paths.leakage_distance / SPEED_OF_LIGHT
        return PathKinds.Leakage(dbm_to_watts(self.paths.leakage_power_dbm), delay)

    def pipeline_config(self) -> PipelineConfig:
        return self.pipeline.to_pipeline(self.paths.loopback_delay)

    # Derived scenarios

    def with_tx_power(self, tx_power_dbm: float) -> ScenarioConfig:
        return replace(self, link_budget=replace(self.link_budget, tx_power_dbm=float(tx_power_dbm)))

    def with_beam_step(self, step_deg: float) -> ScenarioConfig:
        return replace(self, sweep=replace(self.sweep, step_deg=float(step_deg)))

    def with_array(self, n_az: int, n_el: int) -> ScenarioConfig:
        return replace(self, geometry=replace(self.geometry, n_az=int(n_az), n_el=int(n_el)))

    def noiseless(self) -> ScenarioConfig:
        return replace(self, link_budget=replace(self.link_budget, noise_power_dbm=None))

    def with_aod(self, azimuth: float, elevation: Optional[float] = None) -> ScenarioConfig:
        """Move the UE to a new AOD at the same distance, keeping the RIS orientation."""
        truth = self.ground_truth()
        elevation = truth.aod.elevation if elevation is None else elevation
        orientation = self.orientation()
        ue_position = direction_to_global(
            Direction(azimuth, elevation),
            truth.distance,
            Position3(*self.geometry.ris_position),
            orientation,
        )
        geometry = replace(
            self.geometry,
            ue_position=tuple(ue_position),
            ris_normal=tuple(float(v) for v in orientation.normal),
        )
        return replace(self, geometry=geometry)

    def to_dict(self) -> Dict[str, Any]:
        return _to_plain(self)

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> ScenarioConfig:
        return _build(cls, data or {}, "")


def _to_plain(value):
    if is_dataclass(value):
        return {f.name: _to_plain(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, (tuple, list)):
        return [_to_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def _join(prefix: str, name: str) -> str:
    return f"{prefix}.{name}" if prefix else name


def _coerce(value, hint, path: str):
    origin = get_origin(hint)
    args = get_args(hint)
    if origin is Union:
        if value is None:
            if type(None) in args:
                return None
            raise ConfigError(path, "must not be null")
        inner = [a for a in args if a is not type(None)]
        return _coerce(value, inner[0], path)
    if value is None:
        raise ConfigError(path, "must not be null")
    if is_dataclass(hint):
        return _build(hint, value, path)
    if hint is bool:
        if not isinstance(value, bool):
            raise ConfigError(path, f"expected true or false, got {value!r}")
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
            raise ConfigError(path, f"expected an integer, got {value!r}")
        return int(value)
    if hint is float:
        if isinstance(value, bool):
            raise ConfigError(path, f"expected a number, got {value!r}")
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(path, f"expected a number, got {value!r}") from None
    if hint is str:
        if not isinstance(value, str):
            raise ConfigError(path, f"expected a string, got {value!r}")
        return value
    if origin is tuple:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(path, f"expected a list, got {value!r}")
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_coerce(v, args[0], f"{path}[{i}]") for i, v in enumerate(value))
        if len(value) not in (len(args), len(args) - 1):
            raise ConfigError(path, f"expected {len(args)} entries, got {len(value)}")
        return tuple(_coerce(v, a, f"{path}[{i}]") for i, (v, a) in enumerate(zip(value, args)))
    return value


def _build(cls, data, prefix: str):
    if isinstance(data, cls):
        return data
    if not isinstance(data, dict):
        raise ConfigError(prefix or cls.__name__, f"expected a mapping, got {data!r}")
    hints = get_type_hints(cls)
    known = {f.name for f in fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(_join(prefix, str(key)), "unknown field")
    kwargs = {key: _coerce(value, hints[key], _join(prefix, key)) for key, value in data.items()}
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except TypeError as err:
        raise ConfigError(prefix or cls.__name__, str(err)) from err
    except ValueError as err:
        raise ConfigError(prefix or cls.__name__, str(err)) from err


def load_config(path: Union[str, Path, None] = None) -> ScenarioConfig:
    """Parse and validate a YAML scenario file; None or an empty file gives the reference scenario."""
    if path is None:
        return ScenarioConfig()
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = yaml.safe_load(handle)
        except yaml.YAMLError as err:
            raise ConfigError(str(path), f"could not parse YAML: {err}") from err
    config = ScenarioConfig.from_dict(data)
    logger.info("Loaded scenario from %s", path)
    return config


def dump_config(config: ScenarioConfig, path: Union[str, Path]):
    """Write every field of ``config`` so that ``load_config`` reproduces it."""
    with atomic_path(path) as tmp:
        with open(tmp, "w", encoding="utf-8") as handle:
            yaml.safe_dump(config.to_dict(), handle, sort_keys=False)
