"""CSV emission of results.

Every table is written with a header row and floats at full round-trip
precision. ``emit_csv`` dispatches on the result type; result types living
in other sub-packages register their own writers.
"""
from __future__ import annotations
from functools import singledispatch
from pathlib import Path
from typing import List, Union
import logging

import pandas as pd

from risloc.dsp import SweepResult
from risloc.io._atomic import atomic_path

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def write_table(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    with atomic_path(path) as tmp:
        frame.to_csv(tmp, index=False)
    logger.info("Wrote %d rows to %s", len(frame), path)
    return path


def sibling(path: PathLike, suffix: str) -> Path:
    """``out/run.csv`` with suffix ``map`` becomes ``out/run_map.csv``."""
    path = Path(path)
    return path.with_name(f"{path.stem}_{suffix}.csv")


@singledispatch
def emit_csv(result, path: PathLike) -> List[Path]:
    """Write ``result`` as one or more CSV files and return their paths."""
    raise TypeError(f"No CSV layout for {type(result).__name__}.")


@emit_csv.register
def _(result: pd.DataFrame, path: PathLike) -> List[Path]:
    return [write_table(result, path)]


@emit_csv.register
def _(result: SweepResult, path: PathLike) -> List[Path]:
    return [write_table(result.to_frame(), path)]


def read_csv(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")
