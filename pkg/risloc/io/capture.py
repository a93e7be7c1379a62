"""Cube files and raw int16 I/Q captures.

A capture is a pair of files: raw samples and a YAML sidecar. Samples are
16-bit signed little-endian integers, I then Q for each sample, with n varying
fastest, then k, then m, so the file holds exactly 2 * 2 * N * K * M bytes.
Complex values are ``scale * (I + jQ)``.
"""
from __future__ import annotations
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union
import logging

import numpy as np
import yaml

from risloc.types import BeatCube, Direction, SweepPlan, Waveform
from risloc.io._atomic import atomic_path

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
INT16_FULL_SCALE = 32767
_CAPTURE_DTYPE = np.dtype("<i2")


def save_cube(cube: BeatCube, path: PathLike):
    """Store a cube, its waveform and its sweep angles in an ``.npz`` archive."""
    waveform = np.array([getattr(cube.waveform, f.name) for f in fields(Waveform)], dtype=float)
    with atomic_path(path) as tmp:
        with open(tmp, "wb") as handle:
            np.savez(
                handle,
                samples=cube.samples,
                waveform=waveform,
                azimuths=cube.plan.azimuths,
                elevations=cube.plan.elevations,
            )
    logger.info("Wrote %r to %s", cube, path)


def load_cube(path: PathLike) -> BeatCube:
    with np.load(path, allow_pickle=False) as archive:
        values = archive["waveform"].tolist()
        kwargs = {}
        for spec, value in zip(fields(Waveform), values):
            kwargs[spec.name] = int(value) if spec.type in (int, "int") else float(value)
        plan = SweepPlan(
            angles=tuple(
                Direction(float(az), float(el))
                for az, el in zip(archive["azimuths"], archive["elevations"])
            )
        )
        return BeatCube(archive["samples"], Waveform(**kwargs), plan)


def _metadata(cube: BeatCube, scale: float) -> Dict[str, Any]:
    n, k, m = cube.shape
    return {
        "samples_per_chirp": n,
        "chirps_per_frame": k,
        "num_frames": m,
        "scale": float(scale),
        "waveform": asdict(cube.waveform),
        "sweep": {
            "azimuth_rad": [float(a) for a in cube.plan.azimuths],
            "elevation_rad": [float(e) for e in cube.plan.elevations],
        },
        "trim": None,
    }


def export_capture(
    cube: BeatCube,
    data_path: PathLike,
    meta_path: PathLike,
    scale: Optional[float] = None,
) -> float:
    """Quantize a cube to int16 I/Q and write it with its sidecar.

    Parameters
    ----------
    cube : BeatCube
        The cube to export.
    data_path, meta_path : PathLike
        Destinations of the raw samples and the YAML metadata.
    scale : Optional[float]
        Value of one integer step. If None the largest I or Q magnitude is
        mapped to full scale.

    Returns
    -------
    float
        The scale written to the metadata.
    """
    samples = cube.samples
    if scale is None:
        peak = max(np.max(np.abs(samples.real)), np.max(np.abs(samples.imag)))
        scale = float(peak) / INT16_FULL_SCALE if peak > 0 else 1.0
    if not (np.isfinite(scale) and scale > 0):
        raise ValueError(f"Invalid capture scale {scale} passed.")

    # (N, K, M) -> (M, K, N, 2) so that n runs fastest after the I/Q pair
    interleaved = np.stack([samples.real, samples.imag], axis=-1).transpose(2, 1, 0, 3)
    quantized = np.clip(np.rint(interleaved / scale), -INT16_FULL_SCALE - 1, INT16_FULL_SCALE)
    clipped = int(np.count_nonzero(np.abs(interleaved / scale) > INT16_FULL_SCALE + 0.5))
    if clipped:
        logger.warning("%d I/Q values clipped while exporting %r", clipped, cube)

    with atomic_path(data_path) as tmp:
        quantized.astype(_CAPTURE_DTYPE).tofile(tmp)
    with atomic_path(meta_path) as tmp:
        with open(tmp, "w", encoding="utf-8") as handle:
            yaml.safe_dump(_metadata(cube, scale), handle, sort_keys=False)
    logger.info("Exported %r to %s (scale %.6g)", cube, data_path, scale)
    return float(scale)


def _check_trim(trim: Tuple[int, int], num_frames: int) -> Tuple[int, int]:
    try:
        start, stop = (int(v) for v in trim)
    except (TypeError, ValueError):
        raise ValueError(f"Invalid trim range {trim!r} passed.") from None
    if not 0 <= start < stop <= num_frames:
        raise ValueError(f"Trim range {start}:{stop} outside 0:{num_frames}.")
    return start, stop


def _plan_from_metadata(meta: Dict[str, Any], plan: Optional[SweepPlan]) -> SweepPlan:
    sweep = meta.get("sweep")
    if sweep is None:
        if plan is None:
            raise ValueError("Capture metadata has no sweep angles and no plan was given.")
        return plan
    if not isinstance(sweep, dict) or "azimuth_rad" not in sweep:
        raise ValueError("Capture metadata sweep is missing azimuth_rad.")
    try:
        azimuths = [float(a) for a in sweep["azimuth_rad"]]
        elevations = [float(e) for e in sweep.get("elevation_rad", [0.0] * len(azimuths))]
    except (TypeError, ValueError):
        raise ValueError("Capture metadata sweep angles must be lists of numbers.") from None
    if len(elevations) != len(azimuths):
        raise ValueError("Capture sweep azimuth and elevation lists differ in length.")
    return SweepPlan(angles=tuple(Direction(a, e) for a, e in zip(azimuths, elevations)))


def _waveform_from_metadata(entry: Any) -> Waveform:
    if not isinstance(entry, dict):
        raise ValueError("Capture metadata waveform must be a mapping.")
    unknown = sorted(set(entry) - {f.name for f in fields(Waveform)})
    if unknown:
        keys = ", ".join(map(str, unknown))
        raise ValueError(f"Capture metadata waveform has unknown keys {keys}.")
    try:
        return Waveform(**entry)
    except TypeError as err:
        raise ValueError(f"Invalid capture metadata waveform: {err}.") from None


def _read_metadata(meta_path: PathLike) -> Dict[str, Any]:
    with open(meta_path, "r", encoding="utf-8") as handle:
        try:
            meta = yaml.safe_load(handle) or {}
        except yaml.YAMLError as err:
            raise ValueError(f"Could not parse capture metadata {meta_path}: {err}") from None
    if not isinstance(meta, dict):
        raise ValueError(f"Capture metadata {meta_path} is not a mapping.")
    return meta


def _integer_entry(meta: Dict[str, Any], key: str) -> int:
    if key not in meta:
        raise ValueError(f"Capture metadata is missing {key}.")
    value = meta[key]
    try:
        whole = not isinstance(value, bool) and int(value) == value
    except (TypeError, ValueError, OverflowError):
        whole = False
    if not whole:
        raise ValueError(f"Capture metadata {key} must be an integer, got {value!r}.")
    return int(value)


def ingest_capture(
    data_path: PathLike,
    meta_path: PathLike,
    trim: Optional[Tuple[int, int]] = None,
    waveform: Optional[Waveform] = None,
    plan: Optional[SweepPlan] = None,
) -> BeatCube:
    """Read a raw capture back into a cube.

    Parameters
    ----------
    data_path, meta_path : PathLike
        Raw samples and YAML sidecar.
    trim : Optional[Tuple[int, int]]
        Half-open frame range to keep; overrides a ``trim`` entry in the
        metadata. None keeps the metadata's range, or every frame.
    waveform, plan : optional
        Used when the metadata carries no waveform or sweep section.

    Raises
    ------
    ValueError
        If the file size, metadata dimensions or trim range are inconsistent.
    """
    meta = _read_metadata(meta_path)
    n, k, m = (
        _integer_entry(meta, key) for key in ("samples_per_chirp", "chirps_per_frame", "num_frames")
    )
    try:
        scale = float(meta.get("scale", 1.0))
    except (TypeError, ValueError):
        raise ValueError(f"Capture metadata scale must be a number, got {meta['scale']!r}.") from None

    if "waveform" in meta:
        waveform = _waveform_from_metadata(meta["waveform"])
    elif waveform is None:
        waveform = Waveform(samples_per_chirp=n, chirps_per_frame=k)
    if (waveform.samples_per_chirp, waveform.chirps_per_frame) != (n, k):
        raise ValueError(
            f"Capture dimensions {n}x{k} disagree with the waveform "
            f"{waveform.samples_per_chirp}x{waveform.chirps_per_frame}."
        )
    plan = _plan_from_metadata(meta, plan)
    if len(plan) != m:
        raise ValueError(f"Capture holds {m} frames but the sweep has {len(plan)} angles.")

    expected = 2 * _CAPTURE_DTYPE.itemsize * n * k * m
    size = Path(data_path).stat().st_size
    if size != expected:
        raise ValueError(f"Capture file is {size} bytes, expected {expected} for {n}x{k}x{m}.")

    raw = np.fromfile(data_path, dtype=_CAPTURE_DTYPE).reshape(m, k, n, 2)
    samples = scale * (raw[..., 0].astype(float) + 1j * raw[..., 1].astype(float))
    cube = BeatCube(samples.transpose(2, 1, 0), waveform, plan)

    if trim is None and meta.get("trim") is not None:
        trim = meta["trim"]
    if trim is not None:
        start, stop = _check_trim(trim, m)
        if (start, stop) != (0, m):
            logger.warning("Trimming capture to frames %d:%d of %d", start, stop, m)
        cube = cube.trimmed(start, stop)
    return cube
