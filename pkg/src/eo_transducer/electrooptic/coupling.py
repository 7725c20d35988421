"""
Single-photon electro-optic coupling from an azimuthal microwave field profile.

The reduced overlap integral keeps only the azimuthal dependence of the
microwave field on the rim of the crystal:

    g_eo = (1/16 pi) n^2 r33 sqrt(w_p w_a) sqrt(hbar w_b / W) * loop_integral(E(phi) dphi)

The loop integral is a periodic trapezoidal sum that includes the segment from
the last sample back to the first one (phi + 2 pi).
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import Final, Literal, NamedTuple

import numpy as np
import pandas as pd
import structlog

from eo_transducer.core.constants import HBAR
from eo_transducer.core.errors import InvalidParameterError, InvalidProfileError

logger = structlog.get_logger(__name__)

MIN_SAMPLES: Final[int] = 4
TWO_PI: Final[float] = 2.0 * math.pi
PROFILE_COLUMNS: Final[tuple[str, str]] = ("phi_degrees", "field_V_per_m")

ERR_TOO_FEW = "field profile needs at least {min} samples, got {count}"
ERR_NOT_INCREASING = "field profile phi must be strictly increasing"
ERR_PHI_RANGE = "field profile phi must lie in [0, 2*pi)"
ERR_ENERGY = "stored energy must be positive, got {value!r}"
ERR_SHAPE = "field profile phi and field must be 1-D arrays of equal length"
ERR_NOT_FINITE = "field profile contains non-finite values"
ERR_HEADER = "field profile header must be '{expected}', got '{found}'"
ERR_ROW = "field profile row {row} is not numeric"
ERR_OPTICS = "crystal optics need n > 1 and r33 > 0"
ERR_FREQUENCY = "all mode frequencies must be positive"

ProfileKind = Literal["uniform", "cos", "abs_cos", "cos_squared"]


@dataclass(frozen=True)
class FieldProfile:
    """
    Tabulated azimuthal microwave field on the crystal rim.

    Attributes:
        phi: sample angles in rad, strictly increasing in [0, 2 pi)
        field: field magnitude at each angle, V/m
        stored_energy: total stored microwave energy W, J
    """

    phi: np.ndarray
    field: np.ndarray
    stored_energy: float = 1.0

    def __post_init__(self) -> None:
        phi = np.asarray(self.phi, dtype=float)
        field = np.asarray(self.field, dtype=float)
        if phi.ndim != 1 or phi.shape != field.shape:
            raise InvalidProfileError(ERR_SHAPE)
        if phi.size < MIN_SAMPLES:
            raise InvalidProfileError(
                ERR_TOO_FEW.format(min=MIN_SAMPLES, count=phi.size)
            )
        if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(field))):
            raise InvalidProfileError(ERR_NOT_FINITE)
        if np.any(np.diff(phi) <= 0.0):
            raise InvalidProfileError(ERR_NOT_INCREASING)
        if phi[0] < 0.0 or phi[-1] >= TWO_PI:
            raise InvalidProfileError(ERR_PHI_RANGE)
        if not (self.stored_energy > 0.0 and math.isfinite(self.stored_energy)):
            raise InvalidProfileError(ERR_ENERGY.format(value=self.stored_energy))
        phi.setflags(write=False)
        field.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "field", field)

    @classmethod
    def from_samples(
        cls, samples: Iterable[tuple[float, float]], stored_energy: float = 1.0
    ) -> "FieldProfile":
        pairs = list(samples)
        phi = np.array([p for p, _ in pairs], dtype=float)
        field = np.array([e for _, e in pairs], dtype=float)
        return cls(phi=phi, field=field, stored_energy=stored_energy)

    def scaled(self, factor: float) -> "FieldProfile":
        return FieldProfile(self.phi, self.field * factor, self.stored_energy)

    def with_energy(self, stored_energy: float) -> "FieldProfile":
        return FieldProfile(self.phi, self.field, stored_energy)

    def loop_integral(self) -> float:
        """Periodic trapezoidal integral of the field over one turn, V/m * rad."""
        phi = np.append(self.phi, self.phi[0] + TWO_PI)
        field = np.append(self.field, self.field[0])
        return float(np.trapezoid(field, phi))


@dataclass(frozen=True)
class CrystalOptics:
    """Extraordinary index n and electro-optic coefficient r33 (m/V)."""

    refractive_index: float = 2.21
    electrooptic_coeff: float = 30.8e-12

    def __post_init__(self) -> None:
        if not (self.refractive_index > 1.0 and self.electrooptic_coeff > 0.0):
            raise InvalidParameterError(ERR_OPTICS)


class CouplingEstimate(NamedTuple):
    """Signed g_eo (sign follows the loop integral) and its magnitude, rad/s."""

    signed: float
    magnitude: float


def g_eo_from_profile(
    profile: FieldProfile,
    optics: CrystalOptics,
    omega_p: float,
    omega_a: float,
    omega_b: float,
) -> CouplingEstimate:
    """
    Evaluate the reduced electro-optic coupling rate.

    Args:
        profile: validated azimuthal field profile and stored energy
        optics: crystal refractive index and r33
        omega_p: pump mode frequency, rad/s
        omega_a: signal mode frequency, rad/s
        omega_b: microwave mode frequency, rad/s

    Returns:
        CouplingEstimate with the signed rate and its magnitude, rad/s
    """
    if min(omega_p, omega_a, omega_b) <= 0.0:
        raise InvalidParameterError(ERR_FREQUENCY)
    prefactor = (
        optics.refractive_index**2
        * optics.electrooptic_coeff
        * math.sqrt(omega_p * omega_a)
        * math.sqrt(HBAR * omega_b / profile.stored_energy)
        / (16.0 * math.pi)
    )
    g = prefactor * profile.loop_integral()
    logger.debug("g_eo evaluated", g_eo=g, samples=profile.phi.size)
    return CouplingEstimate(signed=g, magnitude=abs(g))


def synthetic_profile(
    kind: ProfileKind, peak: float, samples: int = 720, stored_energy: float = 1.0
) -> FieldProfile:
    """Uniformly sampled analytic profile: peak * {1, cos, |cos|, cos^2}(phi)."""
    phi = np.arange(samples) * (TWO_PI / samples)
    shapes = {
        "uniform": np.ones_like(phi),
        "cos": np.cos(phi),
        "abs_cos": np.abs(np.cos(phi)),
        "cos_squared": np.cos(phi) ** 2,
    }
    return FieldProfile(phi=phi, field=peak * shapes[kind], stored_energy=stored_energy)


def load_field_profile(path: Path, stored_energy: float = 1.0) -> FieldProfile:
    """
    Read a `phi_degrees,field_V_per_m` table into a FieldProfile.

    Raises:
        InvalidProfileError: on a wrong header, a non-numeric row or an
            invalid sample layout
        OSError: if the file cannot be read
    """
    frame = pd.read_csv(path, dtype=str, skipinitialspace=True)
    found = ",".join(str(c).strip() for c in frame.columns)
    if tuple(c.strip() for c in frame.columns) != PROFILE_COLUMNS:
        raise InvalidProfileError(
            ERR_HEADER.format(expected=",".join(PROFILE_COLUMNS), found=found)
        )
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna().any(axis=1)
    if bad.any():
        # header is line 1
        raise InvalidProfileError(ERR_ROW.format(row=int(bad.idxmax()) + 2))
    phi = np.deg2rad(numeric[PROFILE_COLUMNS[0]].to_numpy(dtype=float))
    field = numeric[PROFILE_COLUMNS[1]].to_numpy(dtype=float)
    logger.info("field profile loaded", path=str(path), samples=phi.size)
    return FieldProfile(phi=phi, field=field, stored_energy=stored_energy)
