from risloc.localization._localize import (
    LocalizationEstimate,
    GroundTruth,
    ErrorReport,
    angular_separation,
    localize,
    estimate_position,
    error_report,
)
