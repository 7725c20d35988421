from .integrator import DormandPrince, StepControl
from .oracle import (
    TRAJECTORY_COLUMNS,
    DriveTone,
    TrajectoryResult,
    conversion_efficiency,
    integrate,
    integrate_dispersive,
    write_trajectory_csv,
)

__all__ = [
    "TRAJECTORY_COLUMNS",
    "DormandPrince",
    "DriveTone",
    "StepControl",
    "TrajectoryResult",
    "conversion_efficiency",
    "integrate",
    "integrate_dispersive",
    "write_trajectory_csv",
]
