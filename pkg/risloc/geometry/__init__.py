from risloc.geometry._layout import ArrayLayout, make_upa
from risloc.geometry._orientation import Orientation
from risloc.geometry._vectors import (
    unit_vector,
    wavenumber_vector,
    steering_vector,
    ris_phase_profile,
    direction_to_global,
    global_to_direction,
)
