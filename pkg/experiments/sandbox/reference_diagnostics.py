import math
import time

from risloc.experiments import diagnostic_run
from risloc.io import PathSettings, ScenarioConfig, SweepSettings

if __name__ == "__main__":
    scenario = ScenarioConfig(
        sweep=SweepSettings(azimuth_start_deg=-3.0, azimuth_stop_deg=3.0, step_deg=1.5),
        paths=PathSettings(leakage=True),
    )

    start = time.time()
    bundle = diagnostic_run(scenario, seed=0, max_distance=20.0)
    end = time.time()
    print(f"{end - start:.2f} s")

    result = bundle.result
    print(
        f"beam {result.selected} ({math.degrees(result.aod.azimuth):.2f} deg), "
        f"distance {result.distance:.4f} m"
    )
    print(bundle.peaks.to_string(index=False))
    print(bundle.profile_peak_distances)

    # emit_csv(bundle, "reference_diag.csv")
