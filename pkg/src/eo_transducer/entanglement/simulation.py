"""
Monte Carlo oracle for the heralding statistics and pump-power sweeps.

Random numbers come from numpy's counter-based Philox generator. A run is
split into partitions, each seeded by a child of one SeedSequence, and the
partition counts are summed, so results do not depend on evaluation order or
on the number of worker threads.
"""

import math
from collections import Counter
from collections.abc import Sequence
from enum import StrEnum
from typing import Final

import numpy as np
import pandas as pd
import structlog

from eo_transducer.converter.steady_state import cooperativity
from eo_transducer.core.errors import InvalidParameterError
from eo_transducer.core.model import OperatingPoint
from eo_transducer.core.parallel import map_rows
from eo_transducer.entanglement.herald import (
    EntanglementProtocolParams,
    HeraldOutcome,
    Scheme,
    herald,
)

logger = structlog.get_logger(__name__)

RNG_ALGORITHM: Final[str] = f"numpy {np.__version__} Philox-4x64-10 + SeedSequence.spawn"
DEFAULT_PARTITIONS: Final[int] = 8

ENTANGLEMENT_COLUMNS: Final = [
    "power_W",
    "r0_per_s",
    "rate_per_s",
    "infidelity",
    "scheme",
    "r0_model",
]
MONTE_CARLO_COLUMNS: Final = [
    *ENTANGLEMENT_COLUMNS,
    "rate_stderr",
    "infidelity_stderr",
    "attempts",
    "seed",
]

ERR_ATTEMPTS = "attempts must be at least 1, got {value!r}"
ERR_PARTITIONS = "partitions must be at least 1, got {value!r}"
ERR_R0_VALUES = "direct r0 model needs one r0 value per power ({powers} powers, {values} values)"
ERR_POWERS = "powers must be a non-empty list of non-negative values"

BLUE_CAVITY_KEYS: Final = ("P0", "P1", "P_multi")
RED_CAVITY_KEYS: Final = ("p_click", "p_no_click")


class R0Model(StrEnum):
    DIRECT = "direct"
    COOPERATIVITY_SCALED = "cooperativity_scaled"


def _partition_sizes(attempts: int, partitions: int) -> list[int]:
    base, remainder = divmod(attempts, partitions)
    return [base + (1 if i < remainder else 0) for i in range(partitions)]


def _count_blue(x: float, n: int, rng: np.random.Generator) -> Counter[str]:
    photons = rng.poisson(x, size=(n, 2))
    a, b = photons[:, 0], photons[:, 1]
    a_single_or_less, b_single_or_less = a <= 1, b <= 1
    return Counter(
        {
            "P0": int(np.count_nonzero(a == 0) + np.count_nonzero(b == 0)),
            "P1": int(np.count_nonzero(a == 1) + np.count_nonzero(b == 1)),
            "P_multi": int(np.count_nonzero(a > 1) + np.count_nonzero(b > 1)),
            "P00": int(np.count_nonzero((a == 0) & (b == 0))),
            "P10": int(np.count_nonzero((a == 1) & (b == 0))),
            "P01": int(np.count_nonzero((a == 0) & (b == 1))),
            "P11": int(np.count_nonzero((a == 1) & (b == 1))),
            "P_multi_single": int(np.count_nonzero(~a_single_or_less & b_single_or_less)),
            "P_single_multi": int(np.count_nonzero(a_single_or_less & ~b_single_or_less)),
            "P_multi_multi": int(np.count_nonzero(~a_single_or_less & ~b_single_or_less)),
        }
    )


def _count_red(x: float, n: int, rng: np.random.Generator) -> Counter[str]:
    clicks = rng.random(size=(n, 2)) < -math.expm1(-x)
    a, b = clicks[:, 0], clicks[:, 1]
    return Counter(
        {
            "p_click": int(np.count_nonzero(a) + np.count_nonzero(b)),
            "p_no_click": int(np.count_nonzero(~a) + np.count_nonzero(~b)),
            "P00": int(np.count_nonzero(a & b)),
            "P10": int(np.count_nonzero(~a & b)),
            "P01": int(np.count_nonzero(a & ~b)),
            "P11": int(np.count_nonzero(~a & ~b)),
        }
    )


def _binomial_stderr(p: float, n: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / n) if n > 0 else math.nan


def monte_carlo(
    params: EntanglementProtocolParams,
    attempts: int,
    seed: int,
    *,
    partitions: int = DEFAULT_PARTITIONS,
    stream: int | None = None,
    workers: int = 1,
) -> HeraldOutcome:
    """
    Simulate heralding attempts and report empirical statistics.

    Args:
        params: protocol parameters; the scheme selects Poisson (blue) or
            Bernoulli (red) draws per cavity
        attempts: number of attempts, at least 1
        seed: root seed of the SeedSequence
        partitions: number of independently seeded partitions
        stream: optional extra spawn key, used by sweeps to give each row
            its own stream under one recorded seed
        workers: threads used to evaluate partitions

    Returns:
        HeraldOutcome with empirical probabilities, binomial standard errors
        and raw counts. Fidelity is NaN when no attempt enters its denominator.
    """
    if attempts < 1:
        raise InvalidParameterError(ERR_ATTEMPTS.format(value=attempts))
    if partitions < 1:
        raise InvalidParameterError(ERR_PARTITIONS.format(value=partitions))
    root = (
        np.random.SeedSequence(seed)
        if stream is None
        else np.random.SeedSequence(seed, spawn_key=(stream,))
    )
    children = root.spawn(partitions)
    x = params.mean_photons
    counter = _count_blue if params.scheme is Scheme.BLUE else _count_red

    def run(job: tuple[np.random.SeedSequence, int]) -> Counter[str]:
        child, size = job
        return counter(x, size, np.random.Generator(np.random.Philox(child)))

    partials = map_rows(
        run, list(zip(children, _partition_sizes(attempts, partitions), strict=True)), workers
    )
    counts: Counter[str] = Counter()
    for partial in partials:
        counts.update(partial)

    cavity_keys = BLUE_CAVITY_KEYS if params.scheme is Scheme.BLUE else RED_CAVITY_KEYS
    trials = {key: 2 * attempts if key in cavity_keys else attempts for key in counts}
    probabilities = {key: counts[key] / trials[key] for key in counts}
    stderr = {key: _binomial_stderr(probabilities[key], trials[key]) for key in counts}

    if params.scheme is Scheme.BLUE:
        success = counts["P1"] / attempts
        single = probabilities["P1"]
        rate_stderr = math.sqrt(2.0 * single * (1.0 - single) / attempts)
        heralds = counts["P10"] + counts["P01"]
        denominator = attempts - counts["P00"]
    else:
        success = (counts["P10"] + counts["P01"]) / attempts
        rate_stderr = _binomial_stderr(success, attempts)
        heralds = counts["P10"] + counts["P01"]
        denominator = counts["P00"] + heralds

    if denominator == 0:
        logger.warning("no heralded events", scheme=params.scheme.value, attempts=attempts)
        fidelity = math.nan
        fidelity_stderr = math.nan
    else:
        fidelity = heralds / denominator
        fidelity_stderr = _binomial_stderr(fidelity, denominator)

    logger.info(
        "monte carlo complete",
        scheme=params.scheme.value,
        attempts=attempts,
        seed=seed,
        stream=stream,
        partitions=partitions,
        fidelity=fidelity,
    )
    return HeraldOutcome(
        scheme=params.scheme,
        rate=success / params.cycle_time,
        fidelity=fidelity,
        infidelity=1.0 - fidelity,
        success_probability=success,
        probabilities=probabilities,
        rate_stderr=rate_stderr / params.cycle_time,
        infidelity_stderr=fidelity_stderr,
        probability_stderr=stderr,
        counts=dict(counts),
        attempts=attempts,
        seed=seed,
    )


def cooperativity_scaled_rate(op: OperatingPoint) -> float:
    """Heuristic r_0 = C gamma_a gamma_b / (gamma_a + gamma_b), 1/s."""
    return cooperativity(op) * op.gamma_a * op.gamma_b / (op.gamma_a + op.gamma_b)


def sweep_power(
    params_base: EntanglementProtocolParams,
    op: OperatingPoint,
    powers: Sequence[float],
    r0_model: R0Model | str = R0Model.DIRECT,
    r0_values: Sequence[float] | None = None,
    *,
    attempts: int | None = None,
    seed: int | None = None,
    partitions: int = DEFAULT_PARTITIONS,
    workers: int = 1,
) -> pd.DataFrame:
    """
    Entanglement rate and infidelity over a pump-power grid.

    With r0_model "direct" the generation rate of each row is taken from
    r0_values; with "cooperativity_scaled" it follows the operating point at
    that power. Passing attempts switches from closed forms to Monte Carlo,
    one SeedSequence stream per row under the recorded seed.
    """
    model = R0Model(r0_model)
    if len(powers) == 0 or any(not p >= 0.0 for p in powers):
        raise InvalidParameterError(ERR_POWERS)
    if model is R0Model.DIRECT:
        if r0_values is None or len(r0_values) != len(powers):
            raise InvalidParameterError(
                ERR_R0_VALUES.format(
                    powers=len(powers), values=0 if r0_values is None else len(r0_values)
                )
            )
        rates = list(r0_values)
    else:
        rates = [cooperativity_scaled_rate(op.with_power(p)) for p in powers]

    rows = []
    for index, (power, r0) in enumerate(zip(powers, rates, strict=True)):
        params = params_base.with_rate(r0)
        if attempts is None:
            outcome = herald(params)
            rows.append(
                (power, r0, outcome.rate, outcome.infidelity, params.scheme.value, model.value)
            )
        else:
            root_seed = 0 if seed is None else seed
            outcome = monte_carlo(
                params, attempts, root_seed, partitions=partitions, stream=index, workers=workers
            )
            rows.append(
                (
                    power,
                    r0,
                    outcome.rate,
                    outcome.infidelity,
                    params.scheme.value,
                    model.value,
                    outcome.rate_stderr,
                    outcome.infidelity_stderr,
                    attempts,
                    root_seed,
                )
            )

    columns = ENTANGLEMENT_COLUMNS if attempts is None else MONTE_CARLO_COLUMNS
    frame = pd.DataFrame(rows, columns=columns)
    frame.attrs["r0_model"] = model.value
    frame.attrs["rng"] = RNG_ALGORITHM if attempts is not None else None
    logger.info(
        "entanglement sweep complete",
        rows=len(frame),
        scheme=params_base.scheme.value,
        r0_model=model.value,
        monte_carlo=attempts is not None,
    )
    return frame
