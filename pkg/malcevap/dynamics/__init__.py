from ._closure import is_recurrent, orbit_closure_dim
from ._flows import (
    CSV_COLUMNS,
    Trajectory,
    conj_orbit,
    flow_conjugacy_residual,
    flow_trajectory,
    imaginary_part,
    oct_exp,
    oct_log,
    torus_trajectory,
)

__all__ = [
    "Trajectory",
    "CSV_COLUMNS",
    "oct_exp",
    "oct_log",
    "imaginary_part",
    "flow_trajectory",
    "conj_orbit",
    "flow_conjugacy_residual",
    "torus_trajectory",
    "orbit_closure_dim",
    "is_recurrent",
]
