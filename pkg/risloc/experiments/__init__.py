from risloc.experiments.study import (
    SweepStudy,
    StudyResult,
    run_study,
    parse_array_dims,
    grating_free_limit,
    SWEEP_PARAMETERS,
    SUMMARY_COLUMNS,
    RECORD_COLUMNS,
)
from risloc.experiments.diagnostics import (
    DiagnosticsBundle,
    diagnostic_run,
    dominant_peaks,
    largest_peaks,
    to_db,
)
