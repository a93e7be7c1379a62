from risloc.types import Waveform, SweepPlan, BeatCube
from risloc.channel.link_budget import (
    LinkBudget,
    target_gain_sq,
    ris_loopback_gain_sq,
    one_way_gain_sq,
    db_to_linear,
    linear_to_db,
    dbm_to_watts,
    watts_to_dbm,
)
from risloc.channel._paths import PathSpec, PathKinds
from risloc.channel._surface import ReconfigurableSurface
from risloc.channel.surfaces import ReflectiveSurface, SplitArraySurface, make_surface
from risloc.channel.simulator import (
    BeatSignalModel,
    path_tone,
    run_streams,
    synthesize,
    add_leakage,
    GEOMETRY_STREAM,
)
