from risloc.types._basic_types import (
    Direction,
    Position3,
    Meters,
    Seconds,
    Radians,
    SPEED_OF_LIGHT,
)
from risloc.types._waveform import Waveform, SweepPlan
from risloc.types._cube import BeatCube
