"""
Detection noise spectral densities of a transducer-based microwave sensor.

kappa_m is the mode linewidth scaled by a convention factor: 1/2 (half
linewidth, the default) or 1 (full linewidth). Pump strength is n_p g^2; the
cooperativity used by the back-action-evading spectrum is the converter's
C = 4 n_p g^2 / (gamma_a gamma_b), rewritten in kappa.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Final, Literal

import numpy as np
import pandas as pd
import structlog

from eo_transducer.converter.steady_state import cooperativity, pump_photon_number
from eo_transducer.core.errors import DivisionGuardError, InvalidParameterError
from eo_transducer.core.model import OperatingPoint, angular_to_hz
from eo_transducer.core.parallel import map_rows

logger = structlog.get_logger(__name__)

KappaConvention = Literal["half", "full"]
KAPPA_FACTORS: Final[dict[str, float]] = {"half": 0.5, "full": 1.0}
NOISE_COLUMNS: Final = [
    "power_W",
    "cooperativity",
    "s_standard_over_sql",
    "s_bae_over_sql",
    "detuning_Hz",
]

ERR_KAPPA = "kappa_a and kappa_b must be finite and positive"
ERR_THERMAL = "thermal_photons must be finite and non-negative, got {value!r}"
ERR_PUMP = "pump strength must be finite and non-negative, got {value!r}"
ERR_ZERO_PUMP = "noise density needs a nonzero pump strength"
ERR_ZERO_COOPERATIVITY = "back-action-evading density needs C > 0"
ERR_CONVENTION = "kappa convention must be 'half' or 'full', got {value!r}"
ERR_POWERS = "powers must be a non-empty list"


def kappa_factor(convention: str) -> float:
    try:
        return KAPPA_FACTORS[convention]
    except KeyError:
        raise InvalidParameterError(ERR_CONVENTION.format(value=convention)) from None


@dataclass(frozen=True)
class SensingParams:
    """
    Linewidths, thermal occupancy and pump strength of the sensing model.

    Attributes:
        kappa_a: optical kappa, rad/s
        kappa_b: microwave kappa, rad/s
        thermal_photons: microwave thermal occupancy n_T
        pump_strength: n_p g^2, rad^2/s^2
        kappa_factor: kappa / gamma (0.5 half-linewidth, 1.0 full)
    """

    kappa_a: float
    kappa_b: float
    thermal_photons: float = 0.0
    pump_strength: float = 0.0
    kappa_factor: float = 0.5

    def __post_init__(self) -> None:
        if not all(math.isfinite(k) and k > 0.0 for k in (self.kappa_a, self.kappa_b)):
            raise InvalidParameterError(ERR_KAPPA)
        if not (math.isfinite(self.thermal_photons) and self.thermal_photons >= 0.0):
            raise InvalidParameterError(ERR_THERMAL.format(value=self.thermal_photons))
        if not (math.isfinite(self.pump_strength) and self.pump_strength >= 0.0):
            raise InvalidParameterError(ERR_PUMP.format(value=self.pump_strength))

    @property
    def cooperativity(self) -> float:
        """C = 4 n_p g^2 / (gamma_a gamma_b) with gamma = kappa / kappa_factor."""
        return 4.0 * self.pump_strength * self.kappa_factor**2 / (self.kappa_a * self.kappa_b)

    def with_cooperativity(self, c: float) -> "SensingParams":
        pump = c * self.kappa_a * self.kappa_b / (4.0 * self.kappa_factor**2)
        return replace(self, pump_strength=pump)

    @classmethod
    def from_cooperativity(
        cls,
        kappa_a: float,
        kappa_b: float,
        c: float,
        thermal_photons: float = 0.0,
        convention: KappaConvention = "half",
    ) -> "SensingParams":
        base = cls(kappa_a, kappa_b, thermal_photons, 0.0, kappa_factor(convention))
        return base.with_cooperativity(c)

    @classmethod
    def from_operating_point(
        cls,
        op: OperatingPoint,
        thermal_photons: float = 0.0,
        convention: KappaConvention = "half",
    ) -> "SensingParams":
        factor = kappa_factor(convention)
        return cls(
            kappa_a=factor * op.gamma_a,
            kappa_b=factor * op.gamma_b,
            thermal_photons=thermal_photons,
            pump_strength=pump_photon_number(op) * op.g_eo**2,
            kappa_factor=factor,
        )


def noise_floors(params: SensingParams, delta: float) -> tuple[float, float]:
    """(S_RF, S_SQL) = (2 kappa_b (2 n_T + 1), sqrt(kappa_b^2 + Delta^2))."""
    s_rf = 2.0 * params.kappa_b * (2.0 * params.thermal_photons + 1.0)
    s_sql = math.hypot(params.kappa_b, delta)
    return s_rf, s_sql


def noise_standard(params: SensingParams, delta: float) -> float:
    """
    Single-quadrature detection noise.

    S = S_RF + (kappa_b^2 + D^2)(kappa_a^2 + D^2) / (4 n_p g^2) + 4 n_p g^2 / (kappa_a^2 + D^2)

    Raises:
        DivisionGuardError: if the pump strength is zero
    """
    if params.pump_strength == 0.0:
        raise DivisionGuardError(ERR_ZERO_PUMP)
    s_rf, _ = noise_floors(params, delta)
    four_g2 = 4.0 * params.pump_strength
    optical = params.kappa_a**2 + delta**2
    microwave = params.kappa_b**2 + delta**2
    return s_rf + microwave * optical / four_g2 + four_g2 / optical


def noise_bae(params: SensingParams, delta: float) -> float:
    """
    Back-action-evading detection noise.

    S = S_RF + (kappa_b^2 + D^2)(kappa_a^2 + D^2) / (C kappa_a kappa_b)
    """
    c = params.cooperativity
    if c == 0.0:
        raise DivisionGuardError(ERR_ZERO_COOPERATIVITY)
    s_rf, _ = noise_floors(params, delta)
    optical = params.kappa_a**2 + delta**2
    microwave = params.kappa_b**2 + delta**2
    return s_rf + microwave * optical / (c * params.kappa_a * params.kappa_b)


def pump_minimized_standard(params: SensingParams, delta: float) -> float:
    """Minimum of noise_standard over pump strength: S_RF + 2 S_SQL."""
    s_rf, s_sql = noise_floors(params, delta)
    return s_rf + 2.0 * s_sql


def bae_threshold(params: SensingParams, delta: float = 0.0) -> float:
    """Cooperativity at which noise_bae meets S_RF + S_SQL."""
    _, s_sql = noise_floors(params, delta)
    optical = params.kappa_a**2 + delta**2
    microwave = params.kappa_b**2 + delta**2
    return microwave * optical / (params.kappa_a * params.kappa_b * s_sql)


def sweep_noise_vs_power(
    params_base: SensingParams,
    op: OperatingPoint,
    powers: Sequence[float],
    delta: float = 0.0,
    workers: int = 1,
) -> pd.DataFrame:
    """
    SQL-normalised standard and BAE noise over a pump-power grid.

    C(P) comes from the converter; linewidths and n_T from params_base.
    Rows whose density is undefined (P = 0) carry NaN and are logged.
    """
    if len(powers) == 0:
        raise InvalidParameterError(ERR_POWERS)
    _, s_sql = noise_floors(params_base, delta)
    delta_hz = angular_to_hz(delta)

    def row(power: float) -> tuple[float, float, float, float, float]:
        c = cooperativity(op.with_power(power))
        params = params_base.with_cooperativity(c)
        try:
            standard = noise_standard(params, delta) / s_sql
            bae = noise_bae(params, delta) / s_sql
        except DivisionGuardError as exc:
            logger.warning("noise row undefined", power_W=power, error=str(exc))
            standard = bae = np.nan
        return (power, c, standard, bae, delta_hz)

    frame = pd.DataFrame(map_rows(row, list(powers), workers), columns=NOISE_COLUMNS)
    logger.info("noise sweep complete", rows=len(frame), detuning_Hz=delta_hz)
    return frame
