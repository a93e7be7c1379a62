from risloc.dsp.windows import (
    WindowFunction,
    HannWindow,
    RectangularWindow,
    make_window,
    WINDOWS,
)
from risloc.dsp.spectrum import (
    DftPlan,
    DelayDopplerMap,
    window_frame,
    zero_pad,
    delay_doppler_map,
    gate_min_distance,
    peak_index,
    peak,
    average_power,
)
from risloc.dsp._abstract_transform import DelayDopplerTransform
from risloc.dsp.transforms import FastTransform, DirectTransform, make_transform, TRANSFORMS
from risloc.dsp.estimator import (
    PipelineConfig,
    SweepResult,
    estimate,
    frame_map,
    angle_peak,
)
