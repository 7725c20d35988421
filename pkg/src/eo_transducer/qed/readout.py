"""
Optical readout of a dispersively coupled transmon.

The qubit is a frozen label: its state shifts the dressed microwave resonance
by chi and the readout drive stays at the ground-state dressed frequency.
Renormalised frequencies drop out of the interaction-picture equations, so
only chi enters the efficiency.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Final, NamedTuple

import pandas as pd
import structlog
from scipy import optimize

from eo_transducer.converter.steady_state import pump_photon_number
from eo_transducer.core.errors import InvalidParameterError, InvalidThresholdError
from eo_transducer.core.model import OperatingPoint, angular_to_hz, mode_for_convention
from eo_transducer.core.parallel import map_rows

logger = structlog.get_logger(__name__)

# search ceiling for dispersive_resolution, in units of gamma_b
SEARCH_CEILING: Final[float] = 1e3
RESOLUTION_RTOL: Final[float] = 1e-6
UNRESOLVED: Final[float] = math.inf
DISPERSIVE_MAP_COLUMNS: Final = ["q_b", "chi_Hz", "efficiency"]

ERR_THRESHOLD = "threshold must lie in (0, eta(0) = {peak!r}), got {value!r}"
ERR_CHI = "dispersive shift must be finite, got {value!r}"
ERR_EMPTY = "{name} must not be empty"


class QubitState(StrEnum):
    GROUND = "ground"
    EXCITED = "excited"

    @property
    def sigma_z(self) -> int:
        return -1 if self is QubitState.GROUND else 1


@dataclass(frozen=True)
class QubitParams:
    """Dispersive shift chi (rad/s) and the qubit eigenstate."""

    dispersive_shift: float
    state: QubitState = QubitState.GROUND

    def __post_init__(self) -> None:
        if not math.isfinite(self.dispersive_shift):
            raise InvalidParameterError(ERR_CHI.format(value=self.dispersive_shift))
        object.__setattr__(self, "state", QubitState(self.state))

    @property
    def cavity_shift(self) -> float:
        """Shift of the dressed cavity relative to the ground-state resonance."""
        return self.dispersive_shift * (self.state.sigma_z + 1) / 2


class Tone(NamedTuple):
    frequency: float
    label: str


def readout_efficiency(op: OperatingPoint, chi: float) -> float:
    """
    Steady-state microwave-to-optical efficiency under a dispersive shift chi.

    eta(chi) = gamma_ac gamma_bc (2G/gamma_a)^2 / |i chi + gamma_b/2 + 2G^2/gamma_a|^2
    with G^2 = n_p g^2. Equals the on-resonance transduction efficiency at chi = 0.
    """
    if not math.isfinite(chi):
        raise InvalidParameterError(ERR_CHI.format(value=chi))
    g2 = pump_photon_number(op) * op.g_eo**2
    gamma_a = op.gamma_a
    denominator = complex(op.gamma_b / 2.0 + 2.0 * g2 / gamma_a, chi)
    return (
        op.optical_signal.coupling_rate
        * op.microwave.coupling_rate
        * 4.0
        * g2
        / gamma_a**2
        / abs(denominator) ** 2
    )


def readout_efficiency_for_state(op: OperatingPoint, qubit: QubitParams) -> float:
    return readout_efficiency(op, qubit.cavity_shift)


def readout_contrast(op: OperatingPoint, chi: float) -> float:
    """Efficiency difference between the two qubit states, |eta(chi) - eta(0)|."""
    return abs(readout_efficiency(op, chi) - readout_efficiency(op, 0.0))


def dispersive_resolution(op: OperatingPoint, threshold: float) -> float:
    """
    Smallest |chi| (rad/s) at which eta(chi) drops below threshold.

    Args:
        op: operating point
        threshold: efficiency level in (0, eta(0))

    Returns:
        the crossing |chi| to 1e-6 relative, or UNRESOLVED (inf) when the
        crossing lies beyond SEARCH_CEILING * gamma_b

    Raises:
        InvalidThresholdError: if threshold is not in (0, eta(0))
    """
    peak = readout_efficiency(op, 0.0)
    if not 0.0 < threshold < peak:
        raise InvalidThresholdError(ERR_THRESHOLD.format(peak=peak, value=threshold))
    ceiling = SEARCH_CEILING * op.gamma_b
    if readout_efficiency(op, ceiling) >= threshold:
        logger.warning(
            "dispersive shift unresolved below search ceiling",
            threshold=threshold,
            ceiling=ceiling,
        )
        return UNRESOLVED
    chi = optimize.bisect(
        lambda x: readout_efficiency(op, x) - threshold,
        0.0,
        ceiling,
        xtol=1e-300,
        rtol=RESOLUTION_RTOL,
        maxiter=2000,
    )
    return float(chi)


def readout_spectrum_labels(op: OperatingPoint, chi: float) -> list[Tone]:
    """
    Tone ledger of the output optical field.

    The pump sits at w_p; the converted signal for each qubit state sits at
    w_p + w_b + chi * sigma_z, w_b being the dressed microwave frequency.
    """
    omega_p = op.optical_pump.frequency
    omega_b = op.microwave.frequency
    tones = [Tone(omega_p, "pump")]
    tones.extend(
        Tone(omega_p + omega_b + chi * state.sigma_z, f"signal_{state.value}")
        for state in QubitState
    )
    return tones


def sweep_dispersive_map(
    base: OperatingPoint,
    q_values: Sequence[float],
    chis: Sequence[float],
    coupling_ratio: float,
    convention: str = "intrinsic",
    workers: int = 1,
) -> pd.DataFrame:
    """
    Readout efficiency over a (Q_b, chi) grid, Q_b-major.

    chis are rad/s; the table reports them in Hz as `chi_Hz`.
    """
    if len(q_values) == 0:
        raise InvalidParameterError(ERR_EMPTY.format(name="q_values"))
    if len(chis) == 0:
        raise InvalidParameterError(ERR_EMPTY.format(name="chis"))
    grid = [(q, chi) for q in q_values for chi in chis]

    def row(item: tuple[float, float]) -> tuple[float, float, float]:
        q, chi = item
        microwave = mode_for_convention(
            base.microwave.frequency, q, coupling_ratio, convention
        )
        op = base.with_microwave(microwave)
        return (q, angular_to_hz(chi), readout_efficiency(op, chi))

    frame = pd.DataFrame(
        map_rows(row, grid, workers), columns=DISPERSIVE_MAP_COLUMNS
    )
    logger.info("dispersive map complete", rows=len(frame), convention=convention)
    return frame
