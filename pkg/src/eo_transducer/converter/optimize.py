"""
Grid search followed by golden-section refinement.

The objectives are smooth, cheap and one-dimensional, so the optimum is taken
as the grid argmax and then polished with a golden-section search over the
two neighbouring grid cells. No derivatives are used.
"""

from collections.abc import Callable, Sequence
from typing import Final

import numpy as np
import structlog
from scipy import optimize

logger = structlog.get_logger(__name__)

REFINE_XTOL: Final[float] = 1e-4

ERR_EMPTY_GRID = "grid must contain at least one point"


def grid_argmax(objective: Callable[[float], float], grid: Sequence[float]) -> int:
    """Index of the largest objective value on the grid (first one on ties)."""
    if len(grid) == 0:
        raise ValueError(ERR_EMPTY_GRID)
    values = np.array([objective(x) for x in grid])
    return int(np.argmax(values))


def maximize(
    objective: Callable[[float], float],
    grid: Sequence[float],
    xtol: float = REFINE_XTOL,
) -> float:
    """
    Maximize a 1-D objective: grid argmax, then golden-section refinement.

    Refinement is skipped when the argmax sits on the grid edge or when the
    neighbours do not bracket a maximum; the grid point is returned then.
    """
    points = sorted(grid)
    best = grid_argmax(objective, points)
    if best in (0, len(points) - 1):
        return float(points[best])
    bracket = (points[best - 1], points[best], points[best + 1])
    try:
        result = optimize.minimize_scalar(
            lambda x: -objective(x),
            bracket=bracket,
            method="golden",
            options={"xtol": xtol},
        )
    except ValueError:
        logger.debug("golden refinement skipped", bracket=bracket)
        return float(points[best])
    refined = float(result.x)
    if not bracket[0] <= refined <= bracket[2]:
        return float(points[best])
    return refined
