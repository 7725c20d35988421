"""
Coupling, pump-power and detuning sweeps behind the transduction figures.

Every sweep returns a pandas DataFrame whose column names are the CSV header
of the corresponding artefact. Rows are independent and may be evaluated on a
thread pool; they are always assembled in input order.
"""

from collections.abc import Sequence
from typing import Final, Literal

import numpy as np
import pandas as pd
import structlog

from eo_transducer.core.errors import InvalidParameterError
from eo_transducer.core.model import (
    OperatingPoint,
    angular_to_hz,
    mode_for_convention,
)
from eo_transducer.core.parallel import map_rows
from eo_transducer.converter.optimize import maximize
from eo_transducer.converter.steady_state import (
    bandwidth,
    efficiency,
    efficiency_detuned,
)

logger = structlog.get_logger(__name__)

COUPLING_COLUMNS: Final = ["ratio", "n_pump", "cooperativity", "efficiency"]
POWER_COLUMNS: Final = ["power_W", "n_pump", "cooperativity", "efficiency"]
DETUNING_COLUMNS: Final = ["detuning_Hz", "efficiency"]
BANDWIDTH_COLUMNS: Final = ["q_b", "bandwidth_Hz"]
DETUNING_MAP_COLUMNS: Final = ["q_b", *DETUNING_COLUMNS]

Objective = Literal["n_pump", "cooperativity", "efficiency"]

ERR_EMPTY = "{name} must not be empty"
ERR_NEGATIVE = "{name} must all be non-negative"


def _check_axis(values: Sequence[float], name: str) -> None:
    if len(values) == 0:
        raise InvalidParameterError(ERR_EMPTY.format(name=name))
    if any(not v >= 0.0 for v in values):
        raise InvalidParameterError(ERR_NEGATIVE.format(name=name))


def sweep_optical_coupling(
    base: OperatingPoint, ratios: Sequence[float], workers: int = 1
) -> pd.DataFrame:
    """One row per gamma_ac / gamma_a0 ratio; everything else held fixed."""
    _check_axis(ratios, "ratios")

    def row(ratio: float) -> tuple[float, float, float, float]:
        result = efficiency(base.with_signal_coupling_ratio(ratio))
        return (
            ratio,
            result.pump_photons,
            result.cooperativity,
            result.total_efficiency,
        )

    rows = map_rows(row, ratios, workers)
    logger.info("optical coupling sweep complete", rows=len(rows))
    return pd.DataFrame(rows, columns=COUPLING_COLUMNS)


def sweep_pump_power(
    base: OperatingPoint, powers: Sequence[float], workers: int = 1
) -> pd.DataFrame:
    """One row per pump power in W."""
    _check_axis(powers, "powers")

    def row(power: float) -> tuple[float, float, float, float]:
        result = efficiency(base.with_power(power))
        return (
            power,
            result.pump_photons,
            result.cooperativity,
            result.total_efficiency,
        )

    rows = map_rows(row, powers, workers)
    logger.info("pump power sweep complete", rows=len(rows))
    return pd.DataFrame(rows, columns=POWER_COLUMNS)


def sweep_detuning(
    base: OperatingPoint, deltas: Sequence[float], workers: int = 1
) -> pd.DataFrame:
    """Detuned efficiency eta(Delta); deltas in rad/s, emitted in Hz."""
    if len(deltas) == 0:
        raise InvalidParameterError(ERR_EMPTY.format(name="deltas"))
    rows = map_rows(
        lambda d: (angular_to_hz(d), efficiency_detuned(base, d)), deltas, workers
    )
    logger.info("detuning sweep complete", rows=len(rows))
    return pd.DataFrame(rows, columns=DETUNING_COLUMNS)


def sweep_bandwidth_vs_qb(
    base: OperatingPoint,
    q_values: Sequence[float],
    coupling_ratio: float,
    convention: str = "intrinsic",
    workers: int = 1,
) -> pd.DataFrame:
    """Conversion FWHM (Hz) for each microwave Q, pump power held fixed."""
    _check_axis(q_values, "q_values")

    def row(q: float) -> tuple[float, float]:
        microwave = mode_for_convention(
            base.microwave.frequency, q, coupling_ratio, convention
        )
        return q, angular_to_hz(bandwidth(base.with_microwave(microwave)))

    rows = map_rows(row, q_values, workers)
    logger.info("bandwidth sweep complete", rows=len(rows), convention=convention)
    return pd.DataFrame(rows, columns=BANDWIDTH_COLUMNS)


def sweep_detuning_map(
    base: OperatingPoint,
    q_values: Sequence[float],
    deltas: Sequence[float],
    coupling_ratio: float,
    convention: str = "intrinsic",
    workers: int = 1,
) -> pd.DataFrame:
    """
    eta(Delta) for each microwave Q, q_b-major; pump power held fixed.

    deltas are in rad/s and are emitted in Hz, as in sweep_detuning.
    """
    _check_axis(q_values, "q_values")
    blocks = []
    for q in q_values:
        microwave = mode_for_convention(
            base.microwave.frequency, q, coupling_ratio, convention
        )
        block = sweep_detuning(base.with_microwave(microwave), deltas, workers)
        block.insert(0, "q_b", q)
        blocks.append(block)
    frame = pd.concat(blocks, ignore_index=True)
    logger.info("detuning map complete", rows=len(frame), convention=convention)
    return frame


def optimal_coupling(
    base: OperatingPoint,
    objective: Objective,
    ratios: Sequence[float] | None = None,
) -> float:
    """
    Signal coupling ratio gamma_ac / gamma_a0 maximizing the objective.

    Args:
        base: operating point whose signal coupling is varied
        objective: "n_pump", "cooperativity" or "efficiency"
        ratios: search grid, defaults to 400 log-spaced points on [0.01, 100]
    """
    grid = list(ratios) if ratios is not None else list(np.geomspace(0.01, 100, 400))

    def value(ratio: float) -> float:
        result = efficiency(base.with_signal_coupling_ratio(max(ratio, 0.0)))
        return {
            "n_pump": result.pump_photons,
            "cooperativity": result.cooperativity,
            "efficiency": result.total_efficiency,
        }[objective]

    best = maximize(value, grid)
    logger.info("optimal coupling", objective=objective, ratio=best)
    return best
