"""Monte Carlo error studies over transmit power, beam step and array size."""
from __future__ import annotations
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np
import pandas as pd
from tqdm import tqdm

from risloc.channel import GEOMETRY_STREAM, BeatSignalModel, run_streams
from risloc.dsp import estimate
from risloc.io.config import ScenarioConfig
from risloc.io.csv_out import emit_csv, sibling, write_table
from risloc.localization import ErrorReport, error_report, estimate_position

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("tx_power", "beam_step", "n_ris_elements")

# Element counts of the arrays studied, as (azimuth, elevation) columns.
NAMED_ARRAYS = {16: (4, 4), 64: (16, 4), 256: (16, 16)}

SUMMARY_COLUMNS = [
    "parameter",
    "value",
    "runs",
    "failed_runs",
    "distance_mae",
    "distance_se",
    "angle_mae",
    "angle_se",
    "angle_mae_deg",
    "position_mae",
    "position_se",
    "velocity_mae",
    "velocity_se",
    "error",
]

RECORD_COLUMNS = [
    "parameter",
    "value",
    "run",
    "seed",
    "distance_error",
    "angle_error",
    "position_error",
    "velocity_error",
    "selected_index",
    "nearest_index",
    "azimuth_true_deg",
    "azimuth_est_deg",
]


def parse_array_dims(value) -> Tuple[int, int]:
    """Array dimensions from ``"16x4"``, ``(16, 4)`` or an element count."""
    if isinstance(value, str):
        parts = value.lower().split("x")
        if len(parts) == 2:
            try:
                return int(parts[0]), int(parts[1])
            except ValueError:
                pass
        elif len(parts) == 1 and parts[0].strip().isdigit():
            return parse_array_dims(int(parts[0]))
        raise ValueError(f"Invalid array size {value!r} passed.")
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return int(value[0]), int(value[1])
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        if value in NAMED_ARRAYS:
            return NAMED_ARRAYS[int(value)]
        side = math.isqrt(int(value))
        if side > 0 and side * side == value:
            return side, side
    raise ValueError(f"Invalid array size {value!r} passed.")


def grating_free_limit(scenario: ScenarioConfig) -> float:
    """Largest true azimuth, in degrees, with no reflected grating lobe in the sweep.

    The reflected beam repeats when sin(theta) - sin(phi) = lambda / (2 d); the
    first null of that lobe sits lambda / (2 d N_az) further in.
    """
    layout = scenario.layout()
    sweep = scenario.sweep
    widest = math.radians(max(abs(sweep.azimuth_start_deg), abs(sweep.azimuth_stop_deg)))
    period = scenario.waveform.wavelength / (2 * layout.spacing)
    bound = period - math.sin(widest) - period / layout.n_az
    if bound <= 0:
        return 0.0
    return min(math.degrees(math.asin(min(1.0, bound))), math.degrees(widest))


@dataclass
class SweepStudy:
    """A Monte Carlo study sweeping one scenario parameter.

    Parameters
    ----------
    parameter : str
        One of "tx_power" (dBm), "beam_step" (degrees) or "n_ris_elements".
    values : Sequence
        Parameter values, one study point each.
    base_scenario : ScenarioConfig
        Scenario every point is derived from.
    runs_per_point : int
        Monte Carlo runs per value.
    master_seed : int
        Seed from which every run seed is derived.
    randomize_aod : bool
        Draw the true azimuth uniformly per run, keeping the RIS orientation.
    aod_limit_deg : Optional[float]
        Half-width of the random azimuth range; None keeps the true azimuth
        clear of reflected grating lobes (see ``grating_free_limit``).
    keep_records : bool
        Retain one record per run in the result.
    """

    parameter: str
    values: Sequence[Any]
    base_scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    runs_per_point: int = 1000
    master_seed: int = 0
    randomize_aod: bool = False
    aod_limit_deg: Optional[float] = None
    keep_records: bool = False

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(
                f"Invalid study parameter {self.parameter!r}; expected one of {SWEEP_PARAMETERS}."
            )
        self.values = list(self.values)
        if not self.values:
            raise ValueError("A study needs at least one parameter value.")
        if self.runs_per_point < 1:
            raise ValueError(f"Invalid runs per point {self.runs_per_point} passed.")
        if self.master_seed < 0:
            raise ValueError(f"Invalid master seed {self.master_seed} passed.")
        if self.aod_limit_deg is not None and not 0 <= self.aod_limit_deg < 90:
            raise ValueError(f"Invalid AOD limit {self.aod_limit_deg} passed.")

    def __len__(self) -> int:
        return len(self.values)

    def label(self, value) -> Any:
        if self.parameter == "n_ris_elements":
            n_az, n_el = parse_array_dims(value)
            return f"{n_az}x{n_el}"
        return float(value)

    def scenario_for(self, value) -> ScenarioConfig:
        if self.parameter == "tx_power":
            return self.base_scenario.with_tx_power(float(value))
        if self.parameter == "beam_step":
            return self.base_scenario.with_beam_step(float(value))
        return self.base_scenario.with_array(*parse_array_dims(value))

    def run_seed(self, value_index: int, run: int) -> int:
        """Pairwise distinct for a fixed master seed."""
        return (self.master_seed * len(self.values) + value_index) * self.runs_per_point + run

    def aod_limit(self, scenario: ScenarioConfig) -> float:
        """Half-width of the random azimuth range, in degrees.

        Without an explicit limit this is the largest azimuth whose reflected
        grating lobe stays at least one null width outside the sweep.
        """
        if self.aod_limit_deg is not None:
            return self.aod_limit_deg
        return grating_free_limit(scenario)


@dataclass(eq=False)
class StudyResult:
    """Per-value error summary of a study, and optionally every run."""

    parameter: str
    summary: pd.DataFrame
    records: Optional[pd.DataFrame] = None

    @classmethod
    def empty(cls, parameter: str = "") -> StudyResult:
        return cls(parameter, pd.DataFrame(columns=SUMMARY_COLUMNS))

    def __len__(self) -> int:
        return len(self.summary)

    def mae(self, metric: str) -> pd.Series:
        """``metric``_mae indexed by parameter value."""
        return self.summary.set_index("value")[f"{metric}_mae"]

    def standard_error(self, metric: str) -> pd.Series:
        return self.summary.set_index("value")[f"{metric}_se"]


def _mae(errors: np.ndarray) -> Tuple[float, float]:
    if errors.size == 0:
        return math.nan, math.nan
    se = float(np.std(errors, ddof=1) / math.sqrt(errors.size)) if errors.size > 1 else 0.0
    return float(np.mean(errors)), se


def _single_run(
    study: SweepStudy, scenario: ScenarioConfig, model: Optional[BeatSignalModel], seed: int
) -> Tuple[ErrorReport, Dict[str, Any]]:
    if study.randomize_aod:
        limit = study.aod_limit(scenario)
        rng = np.random.default_rng(run_streams(seed, len(scenario.sweep_plan()))[GEOMETRY_STREAM])
        scenario = scenario.with_aod(math.radians(rng.uniform(-limit, limit)))
        model = None
    if model is None:
        model = BeatSignalModel.from_scenario(scenario)
    result = estimate(model.sample(seed), scenario.pipeline_config())
    truth = scenario.ground_truth()
    position = estimate_position(result, truth.ris_position, truth.orientation)
    details = {
        "selected_index": result.selected,
        "nearest_index": scenario.sweep_plan().nearest_index(truth.aod),
        "azimuth_true_deg": math.degrees(truth.aod.azimuth),
        "azimuth_est_deg": math.degrees(result.aod.azimuth),
    }
    return error_report(position, truth), details


def _blank_record(study: SweepStudy, index: int, value, run: int) -> Dict[str, Any]:
    record: Dict[str, Any] = {column: math.nan for column in RECORD_COLUMNS}
    record.update(
        parameter=study.parameter, value=value, run=run, seed=study.run_seed(index, run), selected_index=-1
    )
    return record


def _run_point(study: SweepStudy, index: int) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    value = study.values[index]
    row: Dict[str, Any] = {column: math.nan for column in SUMMARY_COLUMNS}
    row.update(parameter=study.parameter, value=value, runs=0, failed_runs=0, error="")
    try:
        row["value"] = study.label(value)
        scenario = study.scenario_for(value)
        model = None if study.randomize_aod else BeatSignalModel.from_scenario(scenario)
    except ValueError as err:
        logger.warning("Skipping %s=%r: %s", study.parameter, value, err)
        row["error"] = str(err)
        row["failed_runs"] = study.runs_per_point
        return row, [_blank_record(study, index, row["value"], run) for run in range(study.runs_per_point)]

    reports = []
    records = []
    for run in range(study.runs_per_point):
        record = _blank_record(study, index, row["value"], run)
        try:
            report, details = _single_run(study, scenario, model, record["seed"])
        except ValueError as err:
            logger.warning("Run %d of %s=%r failed: %s", run, study.parameter, value, err)
            row["failed_runs"] += 1
        else:
            reports.append(report)
            record.update(report._asdict())
            record.update(details)
        records.append(record)

    row["runs"] = len(reports)
    if reports:
        errors = np.array(reports, dtype=float)
        for column, metric in enumerate(ErrorReport._fields):
            name = metric.replace("_error", "")
            row[f"{name}_mae"], row[f"{name}_se"] = _mae(errors[:, column])
        row["angle_mae_deg"] = math.degrees(row["angle_mae"])
    else:
        row["error"] = row["error"] or "every run failed"
    logger.info(
        "%s=%s: position MAE %.4g m over %d runs", study.parameter, row["value"], row["position_mae"], row["runs"]
    )
    return row, records


def run_study(study: SweepStudy, workers: int = 1, progress: bool = True) -> StudyResult:
    """Run every point of ``study`` and aggregate the errors in value order.

    Parameters
    ----------
    study : SweepStudy
        Study definition.
    workers : int
        Worker processes; 1 runs in-process. Results do not depend on it.
    progress : bool
        Show a progress bar over the study points.
    """
    if workers < 1:
        raise ValueError(f"Invalid worker count {workers} passed.")
    indices = range(len(study))
    bar = dict(total=len(study), desc=f"study {study.parameter}", disable=not progress)
    if workers == 1:
        outcomes = [_run_point(study, i) for i in tqdm(indices, **bar)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(tqdm(executor.map(_run_point, [study] * len(study), indices), **bar))

    summary = pd.DataFrame([row for row, _ in outcomes], columns=SUMMARY_COLUMNS)
    records = None
    if study.keep_records:
        records = pd.DataFrame(
            [record for _, point in outcomes for record in point], columns=RECORD_COLUMNS
        )
    return StudyResult(study.parameter, summary, records)


@emit_csv.register
def _(result: StudyResult, path) -> List[Path]:
    written = [write_table(result.summary, path)]
    if result.records is not None:
        written.append(write_table(result.records, sibling(path, "records")))
    return written
