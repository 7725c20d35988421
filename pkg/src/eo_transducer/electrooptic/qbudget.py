"""
Loaded quality factor of the microwave cavity from its loss channels.

    1/Q_L = 1/Q_d + 1/Q_1 + 1/Q_2 + 1/Q_0,    Q_d = 1 / (p tan_delta)

The combiner as printed repeats the 1/Q_d term; `double_count_dielectric`
reproduces that variant for comparison, the default counts it once.
"""

import math
from dataclasses import dataclass

import structlog

from eo_transducer.core.errors import InvalidParameterError

logger = structlog.get_logger(__name__)

ERR_PARTICIPATION = "participation must lie in (0, 1], got {value!r}"
ERR_LOSS_TANGENT = "loss tangent must be non-negative, got {value!r}"
ERR_Q = "{name} must be positive, got {value!r}"


@dataclass(frozen=True)
class QBudget:
    """
    Loss channels of the microwave mode.

    Attributes:
        participation: dielectric participation ratio p in (0, 1]
        loss_tangent: dielectric loss tangent, >= 0
        intrinsic_q: conductor/other intrinsic Q_0 (math.inf when negligible)
        input_coupler_q: Q_1 of the input port, None when absent
        output_coupler_q: Q_2 of the output port, None when absent
    """

    participation: float
    loss_tangent: float
    intrinsic_q: float = math.inf
    input_coupler_q: float | None = None
    output_coupler_q: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.participation <= 1.0:
            raise InvalidParameterError(
                ERR_PARTICIPATION.format(value=self.participation)
            )
        if not self.loss_tangent >= 0.0:
            raise InvalidParameterError(
                ERR_LOSS_TANGENT.format(value=self.loss_tangent)
            )
        for name, q in (
            ("intrinsic_q", self.intrinsic_q),
            ("input_coupler_q", self.input_coupler_q),
            ("output_coupler_q", self.output_coupler_q),
        ):
            if q is not None and not q > 0.0:
                raise InvalidParameterError(ERR_Q.format(name=name, value=q))


def dielectric_q(participation: float, loss_tangent: float) -> float:
    """
    Dielectric Q_d = 1 / (p tan_delta).

    A zero loss tangent returns math.inf (lossless dielectric) rather than
    raising.
    """
    if not participation > 0.0:
        raise InvalidParameterError(ERR_PARTICIPATION.format(value=participation))
    if not loss_tangent >= 0.0:
        raise InvalidParameterError(ERR_LOSS_TANGENT.format(value=loss_tangent))
    if loss_tangent == 0.0:
        return math.inf
    return 1.0 / (participation * loss_tangent)


def _inverse(q: float | None) -> float:
    return 0.0 if q is None or math.isinf(q) else 1.0 / q


def loaded_q(budget: QBudget, *, double_count_dielectric: bool = False) -> float:
    """Parallel combination of every loss channel in the budget."""
    q_d = dielectric_q(budget.participation, budget.loss_tangent)
    dielectric_terms = 2 if double_count_dielectric else 1
    total = (
        dielectric_terms * _inverse(q_d)
        + _inverse(budget.input_coupler_q)
        + _inverse(budget.output_coupler_q)
        + _inverse(budget.intrinsic_q)
    )
    if total == 0.0:
        return math.inf
    q_l = 1.0 / total
    logger.debug(
        "loaded q evaluated",
        q_d=q_d,
        q_loaded=q_l,
        double_count_dielectric=double_count_dielectric,
    )
    return q_l
