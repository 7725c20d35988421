"""
Steady-state transduction chain.

Closed forms for the intracavity pump photon number, the cooperativity, the
on-resonance and detuned conversion efficiency and the conversion bandwidth.

Detuned efficiency
------------------
Both signal drives are detuned by the same Delta (the pump fixes the
frequency translation). In the frame rotating with the drives the coupled-mode
equations become

    da/dt = (i Delta - gamma_a/2) a + i g alpha b - sqrt(gamma_ac) A_in
    db/dt = (i Delta - gamma_b/2) b + i g alpha* a - sqrt(gamma_bc) B_in

Setting the derivatives to zero with A_in = 0 gives

    a = -i g alpha sqrt(gamma_bc) B_in / D,
    D = (gamma_a/2 - i Delta)(gamma_b/2 - i Delta) + G^2,   G^2 = n_p g^2

so |sqrt(gamma_ac) a / B_in|^2 = gamma_ac gamma_bc G^2 / |D|^2. At Delta = 0
this is (gamma_ac/gamma_a)(gamma_bc/gamma_b) 4C/(1+C)^2 with
C = 4 G^2/(gamma_a gamma_b). The expression is symmetric under
(gamma_ac, gamma_a) <-> (gamma_bc, gamma_b), which is the reciprocity of
up- and down-conversion.
"""

import math
from dataclasses import dataclass
from typing import Final

import structlog
from scipy import optimize

from eo_transducer.core.constants import HBAR
from eo_transducer.core.errors import (
    InvalidParameterError,
    UndefinedBandwidthError,
)
from eo_transducer.core.model import ModeParams, OperatingPoint

logger = structlog.get_logger(__name__)

BANDWIDTH_RTOL: Final[float] = 1e-9
MAX_BRACKET_DOUBLINGS: Final[int] = 200

ERR_ZERO_PEAK = "conversion peak is zero; bandwidth is undefined"
ERR_TARGET = "target cooperativity must be non-negative, got {value!r}"
ERR_NO_PUMP_RESPONSE = "cooperativity does not respond to pump power at this point"
ERR_NO_BRACKET = "could not bracket the half-maximum point"


@dataclass(frozen=True)
class ConversionResult:
    """
    Steady-state figures of merit.

    Attributes:
        pump_photons: intracavity pump photon number n_p
        cooperativity: C = 4 n_p g^2 / (gamma_a gamma_b)
        internal_efficiency: 4C / (1+C)^2
        total_efficiency: internal efficiency times both extraction ratios
    """

    pump_photons: float
    cooperativity: float
    internal_efficiency: float
    total_efficiency: float


def pump_photon_flux(op: OperatingPoint) -> float:
    """Pump photons per second arriving at the coupler, P / (hbar w_p)."""
    return op.pump.power / (HBAR * op.optical_pump.frequency)


def _pump_loss_mode(op: OperatingPoint) -> ModeParams:
    return op.optical_pump if op.use_pump_mode_loss else op.optical_signal


def pump_amplitude(op: OperatingPoint) -> complex:
    """Intracavity pump amplitude alpha = sqrt(gamma_c) A_in / (i delta_p - gamma/2)."""
    mode = _pump_loss_mode(op)
    a_in = math.sqrt(pump_photon_flux(op))
    return math.sqrt(mode.coupling_rate) * a_in / complex(
        -mode.total_rate / 2.0, op.pump.detuning
    )


def pump_photon_number(op: OperatingPoint) -> float:
    """Intracavity pump photon number n_p = |alpha|^2."""
    mode = _pump_loss_mode(op)
    return (
        mode.coupling_rate
        * pump_photon_flux(op)
        / (op.pump.detuning**2 + (mode.total_rate / 2.0) ** 2)
    )


def cooperativity(op: OperatingPoint) -> float:
    """
    Microwave-optical cooperativity 4 n_p g^2 / (gamma_a gamma_b).

    Zero total linewidths are rejected when the OperatingPoint is built.
    """
    return 4.0 * pump_photon_number(op) * op.g_eo**2 / (op.gamma_a * op.gamma_b)


def internal_efficiency(c: float) -> float:
    """4C / (1+C)^2, maximal (unity) at C = 1."""
    return 4.0 * c / (1.0 + c) ** 2


def efficiency(op: OperatingPoint) -> ConversionResult:
    """On-resonance conversion efficiency and its ingredients."""
    n_p = pump_photon_number(op)
    c = 4.0 * n_p * op.g_eo**2 / (op.gamma_a * op.gamma_b)
    eta_i = internal_efficiency(c)
    eta = (
        op.optical_signal.extraction_ratio * op.microwave.extraction_ratio * eta_i
    )
    return ConversionResult(
        pump_photons=n_p,
        cooperativity=c,
        internal_efficiency=eta_i,
        total_efficiency=eta,
    )


def efficiency_detuned(op: OperatingPoint, delta: float) -> float:
    """Conversion efficiency with both signal drives detuned by delta (rad/s)."""
    g2 = pump_photon_number(op) * op.g_eo**2
    denominator = (
        complex(op.gamma_a / 2.0, -delta) * complex(op.gamma_b / 2.0, -delta) + g2
    )
    return (
        op.optical_signal.coupling_rate
        * op.microwave.coupling_rate
        * g2
        / abs(denominator) ** 2
    )


def _half_max_crossing(op: OperatingPoint, half: float, direction: float) -> float:
    def excess(delta: float) -> float:
        return efficiency_detuned(op, delta) - half

    hi = direction * (op.gamma_a + op.gamma_b)
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if excess(hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise UndefinedBandwidthError(ERR_NO_BRACKET)
    lo, hi = (0.0, hi) if direction > 0 else (hi, 0.0)
    return float(
        optimize.bisect(
            excess, lo, hi, xtol=1e-300, rtol=BANDWIDTH_RTOL, maxiter=2000
        )
    )


def half_max_points(op: OperatingPoint) -> tuple[float, float]:
    """Detunings (rad/s) below and above zero where eta falls to half of eta(0)."""
    peak = efficiency_detuned(op, 0.0)
    if not peak > 0.0:
        raise UndefinedBandwidthError(ERR_ZERO_PEAK)
    half = peak / 2.0
    return (
        _half_max_crossing(op, half, -1.0),
        _half_max_crossing(op, half, 1.0),
    )


def bandwidth(op: OperatingPoint) -> float:
    """Full width at half maximum of eta(Delta), rad/s."""
    left, right = half_max_points(op)
    fwhm = right - left
    logger.debug("bandwidth evaluated", fwhm=fwhm, left=left, right=right)
    return fwhm


def power_for_cooperativity(op: OperatingPoint, target: float) -> float:
    """Pump power (W) at which the cooperativity equals target; C is linear in P."""
    if not target >= 0.0:
        raise InvalidParameterError(ERR_TARGET.format(value=target))
    reference = op.with_power(1.0)
    c_per_watt = cooperativity(reference)
    if not c_per_watt > 0.0:
        raise InvalidParameterError(ERR_NO_PUMP_RESPONSE)
    return target / c_per_watt

