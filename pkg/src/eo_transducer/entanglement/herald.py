"""
Closed-form counting statistics of heralded microwave-optical entanglement.

Each attempt lasts Delta t and is followed by a microwave reset t_r. With
x = r_0 Delta t the per-cavity photon number is Poissonian (blue sideband) or
a single conversion event with probability 1 - e^{-x} (red sideband).
"""

import math
from collections.abc import Mapping
from dataclasses import dataclass, replace
from enum import StrEnum
from types import MappingProxyType

from eo_transducer.core.errors import InvalidParameterError

ERR_RATE = "generation rate must be finite and non-negative, got {value!r}"
ERR_DURATION = "attempt duration must be finite and positive, got {value!r}"
ERR_RESET = "reset time must be finite and non-negative, got {value!r}"
ERR_SCHEME = "{op} requires the {expected} scheme, got {found}"
ERR_PROBABILITY = "probability {name} = {value!r} outside [0, 1]"


class Scheme(StrEnum):
    BLUE = "blue"
    RED = "red"


@dataclass(frozen=True)
class EntanglementProtocolParams:
    """
    Attempt-cycle parameters of the heralding protocol.

    Attributes:
        generation_rate: photon generation rate r_0, 1/s
        attempt_duration: Delta t, s
        reset_time: microwave reset time t_r, s
        scheme: blue or red sideband pumping
    """

    generation_rate: float
    attempt_duration: float = 1e-6
    reset_time: float = 1e-6
    scheme: Scheme = Scheme.BLUE

    def __post_init__(self) -> None:
        if not (math.isfinite(self.generation_rate) and self.generation_rate >= 0.0):
            raise InvalidParameterError(ERR_RATE.format(value=self.generation_rate))
        if not (math.isfinite(self.attempt_duration) and self.attempt_duration > 0.0):
            raise InvalidParameterError(ERR_DURATION.format(value=self.attempt_duration))
        if not (math.isfinite(self.reset_time) and self.reset_time >= 0.0):
            raise InvalidParameterError(ERR_RESET.format(value=self.reset_time))
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    @property
    def mean_photons(self) -> float:
        """x = r_0 Delta t, the mean photon number per cavity and attempt."""
        return self.generation_rate * self.attempt_duration

    @property
    def cycle_time(self) -> float:
        return self.attempt_duration + self.reset_time

    def with_rate(self, generation_rate: float) -> "EntanglementProtocolParams":
        return replace(self, generation_rate=generation_rate)


@dataclass(frozen=True)
class HeraldOutcome:
    """
    Rate, fidelity and labelled probability classes of one protocol setting.

    Monte Carlo outcomes also carry binomial standard errors and the raw
    counts; closed-form outcomes leave those fields empty.
    """

    scheme: Scheme
    rate: float
    fidelity: float
    infidelity: float
    success_probability: float
    probabilities: Mapping[str, float]
    rate_stderr: float | None = None
    infidelity_stderr: float | None = None
    probability_stderr: Mapping[str, float] | None = None
    counts: Mapping[str, int] | None = None
    attempts: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        for name, value in self.probabilities.items():
            if not 0.0 <= value <= 1.0:
                raise InvalidParameterError(
                    ERR_PROBABILITY.format(name=name, value=value)
                )
        object.__setattr__(
            self, "probabilities", MappingProxyType(dict(self.probabilities))
        )


def _require_scheme(params: EntanglementProtocolParams, expected: Scheme, op: str) -> None:
    if params.scheme is not expected:
        raise InvalidParameterError(
            ERR_SCHEME.format(op=op, expected=expected.value, found=params.scheme.value)
        )


def blue_fidelity(x: float) -> float:
    """eta_b = 2 P1 P0 / (1 - P0^2) = 2x / (e^{2x} - 1), with eta_b(0) = 1."""
    if x == 0.0:
        return 1.0
    return 2.0 * x / math.expm1(2.0 * x)


def red_fidelity(x: float) -> float:
    """eta_r = 2 P_no_click / (P_click + 2 P_no_click) = 2 / (1 + e^x)."""
    return 2.0 / (1.0 + math.exp(x))


def blue_sideband(params: EntanglementProtocolParams) -> HeraldOutcome:
    """
    Blue-sideband (pair generation) heralding.

    P0 = e^{-x}, P1 = x e^{-x}, P_multi = 1 - P0 - P1 per cavity; the two
    cavities are independent. The rate counts single-photon events of either
    cavity per attempt cycle: 2 r_0 e^{-x} Delta t / (Delta t + t_r).
    """
    _require_scheme(params, Scheme.BLUE, "blue_sideband")
    x = params.mean_photons
    p0 = math.exp(-x)
    p1 = x * p0
    # 1 - e^{-x} - x e^{-x} without cancellation for small x
    p_multi = max(0.0, -math.expm1(-x) - p1)
    single_or_less = p0 + p1
    probabilities = {
        "P0": p0,
        "P1": p1,
        "P_multi": p_multi,
        "P00": p0 * p0,
        "P10": p1 * p0,
        "P01": p0 * p1,
        "P11": p1 * p1,
        "P_multi_single": p_multi * single_or_less,
        "P_single_multi": single_or_less * p_multi,
        "P_multi_multi": p_multi * p_multi,
    }
    fidelity = blue_fidelity(x)
    success = 2.0 * p1
    return HeraldOutcome(
        scheme=Scheme.BLUE,
        rate=success / params.cycle_time,
        fidelity=fidelity,
        infidelity=1.0 - fidelity,
        success_probability=success,
        probabilities=probabilities,
    )


def red_sideband(params: EntanglementProtocolParams) -> HeraldOutcome:
    """
    Red-sideband (conversion) heralding.

    A detector click follows a conversion with p_click = 1 - e^{-x}. Class
    labels follow the click-first convention: P00 is both cavities clicking,
    P10 and P01 a single click and P11 no click at all. The rate uses the
    single-click herald probability P10 + P01 per attempt cycle.
    """
    _require_scheme(params, Scheme.RED, "red_sideband")
    x = params.mean_photons
    p_click = -math.expm1(-x)
    p_no_click = math.exp(-x)
    probabilities = {
        "p_click": p_click,
        "p_no_click": p_no_click,
        "P00": p_click * p_click,
        "P10": p_no_click * p_click,
        "P01": p_click * p_no_click,
        "P11": p_no_click * p_no_click,
    }
    fidelity = red_fidelity(x)
    success = 2.0 * p_click * p_no_click
    return HeraldOutcome(
        scheme=Scheme.RED,
        rate=success / params.cycle_time,
        fidelity=fidelity,
        infidelity=1.0 - fidelity,
        success_probability=success,
        probabilities=probabilities,
    )


def herald(params: EntanglementProtocolParams) -> HeraldOutcome:
    """Closed-form outcome for whichever scheme params selects."""
    if params.scheme is Scheme.BLUE:
        return blue_sideband(params)
    return red_sideband(params)
