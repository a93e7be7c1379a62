from risloc.io.config import (
    ScenarioConfig,
    SweepSettings,
    GeometrySettings,
    LinkBudgetSettings,
    PathSettings,
    TargetSettings,
    PipelineSettings,
    ConfigError,
    load_config,
    dump_config,
)
from risloc.io.capture import save_cube, load_cube, export_capture, ingest_capture
from risloc.io.csv_out import emit_csv, read_csv, write_table
