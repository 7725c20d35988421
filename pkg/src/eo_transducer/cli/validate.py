"""
Cross-module release checks.

Every check returns a CheckResult with the observed value, the expected
value and the tolerance it was judged against. `run_checks` evaluates the
whole suite; the CLI prints the report as JSON and exits nonzero on any
failure.
"""

import math
from collections.abc import Callable
from dataclasses import replace
from typing import Final

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict
from scipy import optimize

from eo_transducer.converter import (
    bandwidth,
    cooperativity,
    efficiency,
    efficiency_detuned,
    optimal_coupling,
    power_for_cooperativity,
)
from eo_transducer.core.model import (
    ModeParams,
    OperatingPoint,
    PumpDrive,
    angular_to_hz,
    hz_to_angular,
)
from eo_transducer.dynamics import (
    DriveTone,
    conversion_efficiency,
    integrate,
    integrate_dispersive,
)
from eo_transducer.electrooptic import (
    CrystalOptics,
    QBudget,
    dielectric_q,
    g_eo_from_profile,
    loaded_q,
    synthetic_profile,
)
from eo_transducer.entanglement import (
    BLUE_CAVITY_KEYS,
    EntanglementProtocolParams,
    Scheme,
    blue_sideband,
    monte_carlo,
    red_sideband,
)
from eo_transducer.presets import transduction_point
from eo_transducer.qed import dispersive_resolution, readout_efficiency
from eo_transducer.sensing import (
    SensingParams,
    noise_bae,
    noise_floors,
    noise_standard,
)
from eo_transducer.settings import settings

logger = structlog.get_logger(__name__)

ORACLE_POINTS: Final[int] = 20
ORACLE_TOLERANCE: Final[float] = 1e-6
SENSING_SAMPLES: Final[int] = 10_000


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    tolerance: float
    observed: float
    expected: float
    detail: str = ""


def _relative(
    name: str, observed: float, expected: float, tolerance: float, detail: str = ""
) -> CheckResult:
    error = abs(observed - expected) / abs(expected)
    return CheckResult(
        name=name,
        passed=bool(error <= tolerance),
        tolerance=tolerance,
        observed=observed,
        expected=expected,
        detail=detail,
    )


def _within(
    name: str, observed: float, low: float, high: float, detail: str = ""
) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(low <= observed <= high),
        tolerance=(high - low) / 2.0,
        observed=observed,
        expected=(high + low) / 2.0,
        detail=detail or f"range [{low}, {high}]",
    )


def _factor(
    name: str, observed: float, expected: float, factor: float, detail: str
) -> CheckResult:
    ratio = observed / expected
    return CheckResult(
        name=name,
        passed=bool(1.0 / factor <= ratio <= factor),
        tolerance=factor,
        observed=observed,
        expected=expected,
        detail=detail,
    )


def check_dielectric_q() -> CheckResult:
    return _relative("dielectric_q", dielectric_q(0.96, 1e-5), 1.0417e5, 1e-3)


def check_loaded_q() -> CheckResult:
    budget = QBudget(participation=0.96, loss_tangent=1e-5)
    observed = loaded_q(budget, double_count_dielectric=settings.double_count_dielectric)
    return _relative(
        "loaded_q_dielectric_only",
        observed,
        dielectric_q(0.96, 1e-5),
        1e-12,
        detail=f"double_count_dielectric={settings.double_count_dielectric}",
    )


def check_g_eo() -> list[CheckResult]:
    omega_a = hz_to_angular(192.43e12)
    omega_b = hz_to_angular(8.93e9)
    optics = CrystalOptics(settings.refractive_index, settings.electrooptic_coeff)
    results: list[CheckResult] = []
    for kind, expected_hz in (("uniform", 88.0), ("abs_cos", 56.0)):
        profile = synthetic_profile(kind, 1e10, stored_energy=1.0)
        g = g_eo_from_profile(profile, optics, omega_a, omega_a, omega_b).magnitude
        results.append(_relative(f"g_eo_{kind}", angular_to_hz(g), expected_hz, 1e-2))
    return results


def check_efficiency_identity() -> CheckResult:
    op = transduction_point(cooperativity=0.58)
    return _relative(
        "efficiency_identity",
        efficiency(op).total_efficiency,
        0.500,
        0.01,
        detail=f"C={cooperativity(op):.6g}",
    )


def check_cooperativity_optimum() -> CheckResult:
    ratio = optimal_coupling(transduction_point(q_convention="intrinsic"), "cooperativity")
    return _within("cooperativity_optimal_coupling", ratio, 0.6, 0.8)


def check_efficiency_optimum() -> list[CheckResult]:
    base = transduction_point(cooperativity=0.58, q_convention="intrinsic")
    ratio = optimal_coupling(base, "efficiency")
    c_opt = cooperativity(base.with_signal_coupling_ratio(ratio))
    return [
        _within(
            "efficiency_optimal_coupling",
            ratio,
            1.5,
            3.5,
            detail=f"C at optimum {c_opt:.4g}; design ratio 2.3",
        ),
        _within("efficiency_optimum_cooperativity", c_opt, 0.3, 1.0),
    ]


def check_bandwidth() -> list[CheckResult]:
    op = transduction_point(cooperativity=0.58, q_convention="loaded")
    fwhm = bandwidth(op)
    c = cooperativity(op)
    return [
        _factor(
            "bandwidth_design_point",
            angular_to_hz(fwhm),
            100e3,
            2.0,
            detail="q_convention=loaded",
        ),
        _relative("bandwidth_narrow_microwave_limit", fwhm, op.gamma_b * (1.0 + c), 0.05),
    ]


def check_dispersive() -> list[CheckResult]:
    op = transduction_point(cooperativity=0.58, q_convention="loaded")
    c = cooperativity(op)
    half_width = op.gamma_b * (1.0 + c) / 2.0
    return [
        _factor(
            "dispersive_resolution",
            angular_to_hz(dispersive_resolution(op, 0.1)),
            98e3,
            2.0,
            detail="threshold 0.1, q_convention=loaded",
        ),
        _relative(
            "dispersive_half_width",
            dispersive_resolution(op, readout_efficiency(op, 0.0) / 2.0),
            half_width,
            1e-2,
        ),
    ]


def random_operating_point(rng: np.random.Generator) -> tuple[OperatingPoint, float]:
    """Normalised operating point with C in [0.01, 2] and ratios in [0.1, 5]."""
    gamma_a0 = 1.0
    gamma_b0 = float(np.exp(rng.uniform(np.log(0.5), np.log(2.0))))
    optical = ModeParams(1e3, gamma_a0, rng.uniform(0.1, 5.0) * gamma_a0)
    microwave = ModeParams(1e2, gamma_b0, rng.uniform(0.1, 5.0) * gamma_b0)
    op = OperatingPoint(
        optical_signal=optical,
        optical_pump=optical,
        microwave=microwave,
        g_eo=1.0,
        pump=PumpDrive(power=1.0, detuning=rng.uniform(-1.0, 1.0)),
    )
    target = float(np.exp(rng.uniform(np.log(0.01), np.log(2.0))))
    return op.with_power(power_for_cooperativity(op, target)), target


def _oracle_horizon(op: OperatingPoint) -> float:
    return 400.0 / min(op.gamma_a, op.gamma_b)


def check_oracle() -> list[CheckResult]:
    rng = np.random.default_rng(settings.seed)
    worst_plain = 0.0
    worst_dispersive = 0.0
    drive = DriveTone(1.0)
    for _ in range(ORACLE_POINTS):
        op, _ = random_operating_point(rng)
        delta = rng.uniform(-1.0, 1.0) * (op.gamma_a + op.gamma_b) / 2.0
        tone = DriveTone(1.0, delta)
        result = integrate(op, DriveTone(0j, delta), tone, _oracle_horizon(op), 1e-11)
        expected = efficiency_detuned(op, delta)
        worst_plain = max(
            worst_plain, abs(conversion_efficiency(result, op, tone) - expected) / expected
        )
        chi = rng.uniform(-10.0, 10.0) * op.gamma_b
        result = integrate_dispersive(op, chi, drive, _oracle_horizon(op), 1e-11)
        expected = readout_efficiency(op, chi)
        worst_dispersive = max(
            worst_dispersive,
            abs(conversion_efficiency(result, op, drive) - expected) / expected,
        )
    detail = f"{ORACLE_POINTS} randomized operating points"
    return [
        CheckResult(
            name="oracle_equivalence",
            passed=worst_plain <= ORACLE_TOLERANCE,
            tolerance=ORACLE_TOLERANCE,
            observed=worst_plain,
            expected=0.0,
            detail=detail,
        ),
        CheckResult(
            name="oracle_equivalence_dispersive",
            passed=worst_dispersive <= ORACLE_TOLERANCE,
            tolerance=ORACLE_TOLERANCE,
            observed=worst_dispersive,
            expected=0.0,
            detail=detail,
        ),
    ]


def check_blue_partition() -> CheckResult:
    worst = 0.0
    for x in np.linspace(0.0, 5.0, 501):
        p = blue_sideband(EntanglementProtocolParams(generation_rate=x / 1e-6)).probabilities
        total = (
            p["P00"] + p["P10"] + p["P01"] + p["P11"]
            + p["P_multi_single"] + p["P_single_multi"] + p["P_multi_multi"]
        )
        worst = max(worst, abs(total - 1.0))
    return CheckResult(
        name="blue_partition_of_unity",
        passed=worst <= 1e-12,
        tolerance=1e-12,
        observed=worst,
        expected=0.0,
    )


def check_blue_infidelity() -> CheckResult:
    outcome = blue_sideband(EntanglementProtocolParams(generation_rate=1e4))
    return CheckResult(
        name="blue_infidelity",
        passed=abs(outcome.infidelity - 0.00997) <= 1e-4,
        tolerance=1e-4,
        observed=outcome.infidelity,
        expected=0.00997,
        detail=f"rate {outcome.rate:.6g} /s",
    )


def check_red_beats_blue() -> CheckResult:
    worst = math.inf
    for x in np.linspace(1e-3, 2.0, 400):
        rate = x / 1e-6
        blue = blue_sideband(EntanglementProtocolParams(rate)).fidelity
        red = red_sideband(EntanglementProtocolParams(rate, scheme=Scheme.RED)).fidelity
        worst = min(worst, red - blue)
    return CheckResult(
        name="red_fidelity_at_least_blue",
        passed=worst >= 0.0,
        tolerance=0.0,
        observed=worst,
        expected=0.0,
        detail="min(eta_r - eta_b) on (0, 2]",
    )


def check_monte_carlo() -> CheckResult:
    attempts = settings.mc_attempts
    worst = 0.0
    for x in (0.001, 0.01, 0.1, 1.0):
        params = EntanglementProtocolParams(generation_rate=x / 1e-6)
        exact = blue_sideband(params).probabilities
        outcome = monte_carlo(
            params, attempts, settings.seed, partitions=settings.mc_partitions
        )
        for key, p in exact.items():
            n = 2 * attempts if key in BLUE_CAVITY_KEYS else attempts
            stderr = math.sqrt(p * (1.0 - p) / n)
            # one count of lattice slack
            excess = max(0.0, abs(outcome.probabilities[key] - p) - 1.0 / n)
            if excess > 0.0:
                worst = max(worst, excess / stderr if stderr > 0.0 else math.inf)
    return CheckResult(
        name="monte_carlo_probability_classes",
        passed=worst <= 4.0,
        tolerance=4.0,
        observed=worst,
        expected=0.0,
        detail=f"max standard-error distance, {attempts} attempts",
    )


def check_sensing_floor() -> CheckResult:
    rng = np.random.default_rng(settings.seed)
    violations = 0
    for _ in range(SENSING_SAMPLES):
        params = SensingParams(
            kappa_a=10.0 ** rng.uniform(3, 9),
            kappa_b=10.0 ** rng.uniform(3, 9),
            thermal_photons=rng.uniform(0.0, 10.0),
            pump_strength=10.0 ** rng.uniform(0, 30),
        )
        delta = rng.uniform(-1e9, 1e9)
        s_rf, s_sql = noise_floors(params, delta)
        floor = s_rf + s_sql
        if noise_standard(params, delta) < floor * (1.0 - 1e-12):
            violations += 1
    return CheckResult(
        name="standard_noise_above_floors",
        passed=violations == 0,
        tolerance=1e-12,
        observed=float(violations),
        expected=0.0,
        detail=f"{SENSING_SAMPLES} randomized parameter sets",
    )


def check_pump_minimized() -> CheckResult:
    kappa_b = 1e6
    params = SensingParams(kappa_a=1e8, kappa_b=kappa_b)
    found = optimize.minimize_scalar(
        lambda log_pump: noise_standard(replace(params, pump_strength=10.0**log_pump), 0.0),
        bounds=(15.0, 27.0),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return _relative("pump_minimized_standard", float(found.fun), 4.0 * kappa_b, 1e-9)


def check_bae_crossing() -> CheckResult:
    # kappa_b = 1 makes kappa_a / kappa_b and kappa_a coincide
    base = SensingParams(kappa_a=100.0, kappa_b=1.0)
    s_rf, s_sql = noise_floors(base, 0.0)

    def excess(log_c: float) -> float:
        return noise_bae(base.with_cooperativity(10.0**log_c), 0.0) - (s_rf + s_sql)

    crossing = 10.0 ** optimize.brentq(excess, -6.0, 10.0, xtol=1e-15, rtol=1e-15)
    return _relative("bae_crossing", crossing, base.kappa_a / base.kappa_b, 1e-9)


Check = Callable[[], CheckResult | list[CheckResult]]

CHECKS: Final[list[Check]] = [
    check_dielectric_q,
    check_loaded_q,
    check_g_eo,
    check_efficiency_identity,
    check_cooperativity_optimum,
    check_efficiency_optimum,
    check_bandwidth,
    check_dispersive,
    check_oracle,
    check_blue_partition,
    check_blue_infidelity,
    check_red_beats_blue,
    check_monte_carlo,
    check_sensing_floor,
    check_pump_minimized,
    check_bae_crossing,
]


def run_checks(checks: list[Check] | None = None) -> list[CheckResult]:
    results: list[CheckResult] = []
    for check in checks or CHECKS:
        outcome = check()
        batch = outcome if isinstance(outcome, list) else [outcome]
        for result in batch:
            logger.info(
                "check evaluated",
                check=result.name,
                passed=result.passed,
                observed=result.observed,
            )
        results.extend(batch)
    return results
