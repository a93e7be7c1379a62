"""Command-line interface: ``risloc simulate|estimate|diagnose|study|ingest``."""
from __future__ import annotations
from pathlib import Path
from typing import Optional, Sequence, Tuple
import argparse
import logging
import math
import sys

from risloc import __version__
from risloc.channel import synthesize
from risloc.dsp import estimate
from risloc.experiments import SWEEP_PARAMETERS, SweepStudy, diagnostic_run, run_study
from risloc.io import (
    emit_csv,
    export_capture,
    ingest_capture,
    load_config,
    load_cube,
    save_cube,
)
from risloc.localization import estimate_position

logger = logging.getLogger(__name__)

FORMATS = ("npz", "capture")


def parse_trim(text: str) -> Tuple[int, int]:
    """``"a:b"`` as a half-open frame range."""
    try:
        start, stop = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid trim {text!r}; expected start:stop") from None
    return start, stop


def parse_values(text: str, parameter: str) -> list:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if parameter == "n_ris_elements":
        return items
    try:
        return [float(item) for item in items]
    except ValueError:
        raise ValueError(f"Invalid --values {text!r} for {parameter}.") from None


def _meta_path(data: Path, meta: Optional[str]) -> Path:
    return Path(meta) if meta else data.with_suffix(".yaml")


def _read_cube(args, config):
    path = Path(args.cube)
    if args.format == "capture":
        return ingest_capture(
            path,
            _meta_path(path, args.meta),
            trim=args.trim,
            waveform=config.waveform,
            plan=config.sweep_plan(),
        )
    cube = load_cube(path)
    if args.trim is not None:
        cube = cube.trimmed(*args.trim)
    return cube


def cmd_simulate(args) -> int:
    config = load_config(args.config)
    cube = synthesize(config, args.seed)
    out = Path(args.out)
    if args.format == "capture":
        export_capture(cube, out, _meta_path(out, args.meta))
    else:
        save_cube(cube, out)
    return 0


def cmd_estimate(args) -> int:
    config = load_config(args.config)
    cube = _read_cube(args, config)
    result = estimate(cube, config.pipeline_config())
    truth = config.ground_truth()
    position = estimate_position(result, truth.ris_position, truth.orientation)
    emit_csv(result, args.out)
    print(
        f"beam {result.selected}: azimuth {math.degrees(result.aod.azimuth):.2f} deg, "
        f"distance {result.distance:.4f} m, velocity {result.velocity:.4f} m/s, "
        f"position ({position.position.x:.4f}, {position.position.y:.4f}, {position.position.z:.4f})"
    )
    return 0


def cmd_diagnose(args) -> int:
    config = load_config(args.config)
    bundle = diagnostic_run(config, seed=args.seed)
    emit_csv(bundle, args.out)
    return 0


def cmd_study(args) -> int:
    config = load_config(args.config)
    study = SweepStudy(
        parameter=args.sweep_param,
        values=parse_values(args.values, args.sweep_param),
        base_scenario=config,
        runs_per_point=args.runs,
        master_seed=args.seed,
        randomize_aod=args.randomize_aod,
        aod_limit_deg=args.aod_limit,
        keep_records=args.records,
    )
    result = run_study(study, workers=args.workers, progress=not args.quiet)
    emit_csv(result, args.out)
    return 0


def cmd_ingest(args) -> int:
    config = load_config(args.config)
    data = Path(args.data)
    cube = ingest_capture(
        data,
        _meta_path(data, args.meta),
        trim=args.trim,
        waveform=config.waveform,
        plan=config.sweep_plan(),
    )
    save_cube(cube, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risloc",
        description="RIS-enabled FMCW radar self-localization toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  risloc simulate --config scene.yaml --seed 1 --out cube.npz
  risloc estimate cube.npz --config scene.yaml --out sweep.csv
  risloc diagnose --config scene.yaml --out diag.csv
  risloc study --sweep-param tx_power --values 5,15,25 --runs 100 --out power.csv
  risloc ingest capture.bin --meta capture.yaml --trim 300:361 --out cube.npz
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub, seed_help="Run seed (default: 0)"):
        sub.add_argument("--config", default=None, help="YAML scenario file (default: reference scenario)")
        sub.add_argument("--seed", type=int, default=0, help=seed_help)
        sub.add_argument("--out", required=True, help="Output path")

    simulate = commands.add_parser("simulate", help="Synthesize a beat-signal cube")
    common(simulate)
    simulate.add_argument("--format", choices=FORMATS, default="npz")
    simulate.add_argument("--meta", default=None, help="Capture sidecar (default: <out>.yaml)")
    simulate.set_defaults(handler=cmd_simulate)

    estimate_cmd = commands.add_parser("estimate", help="Estimate AOD and distance from a cube")
    estimate_cmd.add_argument("cube", help="Cube file (.npz) or raw capture")
    common(estimate_cmd)
    estimate_cmd.add_argument("--format", choices=FORMATS, default="npz")
    estimate_cmd.add_argument("--meta", default=None, help="Capture sidecar (default: <cube>.yaml)")
    estimate_cmd.add_argument("--trim", type=parse_trim, default=None, help="Frames to keep, a:b")
    estimate_cmd.set_defaults(handler=cmd_estimate)

    diagnose = commands.add_parser("diagnose", help="Write map, beam and distance profiles")
    common(diagnose)
    diagnose.set_defaults(handler=cmd_diagnose)

    study = commands.add_parser("study", help="Run a Monte Carlo error study")
    common(study, seed_help="Master seed (default: 0)")
    study.add_argument("--sweep-param", choices=SWEEP_PARAMETERS, required=True)
    study.add_argument("--values", required=True, help="Comma-separated parameter values")
    study.add_argument("--runs", type=int, default=1000, help="Runs per value (default: 1000)")
    study.add_argument("--randomize-aod", action="store_true", help="Draw the true AOD per run")
    study.add_argument("--aod-limit", type=float, default=None, help="Random AOD half-width, deg")
    study.add_argument("--records", action="store_true", help="Also write per-run records")
    study.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1)")
    study.add_argument("--quiet", action="store_true", help="Hide the progress bar")
    study.set_defaults(handler=cmd_study)

    ingest = commands.add_parser("ingest", help="Convert a raw int16 I/Q capture to a cube")
    ingest.add_argument("data", help="Raw capture file")
    ingest.add_argument("--config", default=None, help="Scenario supplying missing metadata")
    ingest.add_argument("--meta", default=None, help="Capture sidecar (default: <data>.yaml)")
    ingest.add_argument("--trim", type=parse_trim, default=None, help="Frames to keep, a:b")
    ingest.add_argument("--out", required=True, help="Output cube (.npz)")
    ingest.set_defaults(handler=cmd_ingest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (ValueError, OSError) as err:
        print(f"risloc: error: {err}", file=sys.stderr)
        return 2
