import math

import numpy as np
import pytest

from eo_transducer.converter import cooperativity, maximize
from eo_transducer.core import InvalidParameterError
from eo_transducer.entanglement import (
    ENTANGLEMENT_COLUMNS,
    MONTE_CARLO_COLUMNS,
    RNG_ALGORITHM,
    EntanglementProtocolParams,
    HeraldOutcome,
    R0Model,
    Scheme,
    blue_fidelity,
    blue_sideband,
    cooperativity_scaled_rate,
    herald,
    monte_carlo,
    red_fidelity,
    red_sideband,
    sweep_power,
)
from eo_transducer.presets import transduction_point

BLUE_JOINT = ("P00", "P10", "P01", "P11", "P_multi_single", "P_single_multi", "P_multi_multi")
RED_JOINT = ("P00", "P10", "P01", "P11")


def _params(x: float, scheme: Scheme = Scheme.BLUE) -> EntanglementProtocolParams:
    """Protocol with a 1 us attempt, so r_0 = x * 1e6."""
    return EntanglementProtocolParams(generation_rate=x * 1e6, scheme=scheme)


def test_blue_infidelity_at_reference_rate():
    outcome = blue_sideband(EntanglementProtocolParams(generation_rate=1e4))
    assert outcome.infidelity == pytest.approx(0.00997, abs=1e-4)


def test_fidelity_limits():
    assert blue_fidelity(0.0) == 1.0
    assert red_fidelity(0.0) == 1.0
    assert blue_fidelity(1e-9) == pytest.approx(1.0)
    assert blue_fidelity(20.0) < 1e-15


@pytest.mark.parametrize("x", np.linspace(0.0, 5.0, 26).tolist())
def test_blue_classes_partition_unity(x: float):
    p = blue_sideband(_params(x)).probabilities
    assert math.fsum(p[k] for k in BLUE_JOINT) == pytest.approx(1.0, abs=1e-12)
    assert p["P0"] + p["P1"] + p["P_multi"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("x", [0.0, 0.05, 1.0, 4.0])
def test_red_classes_partition_unity(x: float):
    p = red_sideband(_params(x, Scheme.RED)).probabilities
    assert math.fsum(p[k] for k in RED_JOINT) == pytest.approx(1.0, abs=1e-12)
    assert p["p_click"] + p["p_no_click"] == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("x", [0.01, 0.3, 2.0])
def test_fidelities_follow_class_ratios(x: float):
    blue = blue_sideband(_params(x))
    pb = blue.probabilities
    assert blue.fidelity == pytest.approx((pb["P10"] + pb["P01"]) / (1.0 - pb["P00"]))
    red = red_sideband(_params(x, Scheme.RED))
    pr = red.probabilities
    assert red.fidelity == pytest.approx(
        (pr["P10"] + pr["P01"]) / (pr["P00"] + pr["P10"] + pr["P01"])
    )


@pytest.mark.parametrize("x", np.linspace(0.001, 2.0, 40).tolist())
def test_red_fidelity_never_below_blue(x: float):
    assert red_fidelity(x) >= blue_fidelity(x)


def test_rate_uses_full_attempt_cycle():
    params = EntanglementProtocolParams(generation_rate=2e5, attempt_duration=1e-6, reset_time=3e-6)
    outcome = blue_sideband(params)
    x = 0.2
    assert outcome.rate == pytest.approx(2.0 * x * math.exp(-x) / 4e-6)
    assert outcome.success_probability == pytest.approx(2.0 * x * math.exp(-x))


def test_herald_dispatches_on_scheme():
    assert herald(_params(0.1)).scheme is Scheme.BLUE
    assert herald(_params(0.1, Scheme.RED)).scheme is Scheme.RED
    with pytest.raises(InvalidParameterError):
        blue_sideband(_params(0.1, Scheme.RED))
    with pytest.raises(InvalidParameterError):
        red_sideband(_params(0.1))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"generation_rate": -1.0},
        {"generation_rate": math.inf},
        {"generation_rate": 1.0, "attempt_duration": 0.0},
        {"generation_rate": 1.0, "reset_time": -1e-6},
    ],
)
def test_protocol_validation(kwargs: dict[str, float]):
    with pytest.raises(InvalidParameterError):
        EntanglementProtocolParams(**kwargs)


def test_outcome_rejects_probability_out_of_range():
    with pytest.raises(InvalidParameterError):
        HeraldOutcome(Scheme.BLUE, 0.0, 1.0, 0.0, 0.0, {"P0": 1.2})


def test_monte_carlo_is_reproducible():
    first = monte_carlo(_params(0.1), 20_000, seed=7)
    second = monte_carlo(_params(0.1), 20_000, seed=7, workers=4)
    other = monte_carlo(_params(0.1), 20_000, seed=7, stream=1)
    assert first.counts == second.counts
    assert first.counts != other.counts
    assert first.seed == 7
    assert first.attempts == 20_000


@pytest.mark.parametrize("scheme", [Scheme.BLUE, Scheme.RED])
def test_monte_carlo_agrees_with_closed_form(scheme: Scheme):
    params = _params(0.1, scheme)
    exact = herald(params)
    sampled = monte_carlo(params, 200_000, seed=20240601)
    assert sampled.infidelity_stderr is not None
    assert sampled.rate_stderr is not None
    assert abs(sampled.fidelity - exact.fidelity) <= 5.0 * sampled.infidelity_stderr
    assert abs(sampled.rate - exact.rate) <= 5.0 * sampled.rate_stderr
    assert sampled.probability_stderr is not None
    for key, p in exact.probabilities.items():
        assert abs(sampled.probabilities[key] - p) <= 5.0 * sampled.probability_stderr[key] + 1e-5


@pytest.mark.parametrize("scheme", [Scheme.BLUE, Scheme.RED])
def test_monte_carlo_without_heralds_has_nan_fidelity(scheme: Scheme):
    outcome = monte_carlo(_params(0.0, scheme), 1_000, seed=1)
    assert math.isnan(outcome.fidelity)


def test_monte_carlo_argument_validation():
    with pytest.raises(InvalidParameterError):
        monte_carlo(_params(0.1), 0, seed=1)
    with pytest.raises(InvalidParameterError):
        monte_carlo(_params(0.1), 10, seed=1, partitions=0)


def test_cooperativity_scaled_rate():
    op = transduction_point()
    expected = cooperativity(op) * op.gamma_a * op.gamma_b / (op.gamma_a + op.gamma_b)
    assert cooperativity_scaled_rate(op) == pytest.approx(expected)


def test_direct_sweep_infidelity_is_monotone():
    powers = np.geomspace(1e-7, 1e-2, 21).tolist()
    r0 = np.geomspace(1e3, 1e8, 21).tolist()
    frame = sweep_power(_params(0.0), transduction_point(), powers, R0Model.DIRECT, r0)
    assert list(frame.columns) == ENTANGLEMENT_COLUMNS
    assert frame["infidelity"].is_monotonic_increasing
    assert frame.attrs["r0_model"] == "direct"
    assert frame.attrs["rng"] is None


def test_cooperativity_scaled_sweep_follows_power():
    powers = [1e-6, 1e-5, 1e-4]
    frame = sweep_power(_params(0.0, Scheme.RED), transduction_point(), powers, "cooperativity_scaled")
    assert frame["r0_per_s"].is_monotonic_increasing
    assert set(frame["scheme"]) == {"red"}


def test_direct_sweep_needs_aligned_rates():
    with pytest.raises(InvalidParameterError):
        sweep_power(_params(0.0), transduction_point(), [1e-6, 1e-5], R0Model.DIRECT, [1e4])


def test_monte_carlo_sweep_records_seed():
    frame = sweep_power(
        _params(0.0), transduction_point(), [1e-6, 1e-5], R0Model.DIRECT, [1e4, 1e5], attempts=2_000, seed=11
    )
    assert list(frame.columns) == MONTE_CARLO_COLUMNS
    assert frame["seed"].tolist() == [11, 11]
    assert frame.attrs["rng"] == RNG_ALGORITHM
    again = sweep_power(
        _params(0.0), transduction_point(), [1e-6, 1e-5], R0Model.DIRECT, [1e4, 1e5], attempts=2_000, seed=11
    )
    assert frame.equals(again)


def test_reference_rate_value():
    outcome = blue_sideband(EntanglementProtocolParams(generation_rate=1e4))
    assert outcome.rate == pytest.approx(9900.5, abs=0.1)


def test_blue_rate_peaks_at_one_photon_per_attempt():
    params = _params(0.0)

    def rate(r0: float) -> float:
        return blue_sideband(params.with_rate(r0)).rate

    best = maximize(rate, np.geomspace(1e3, 1e9, 61).tolist())
    assert best == pytest.approx(1.0 / params.attempt_duration, rel=0.02)


def test_fidelities_strictly_decrease():
    grid = np.linspace(0.0, 5.0, 501)
    assert np.all(np.diff([blue_fidelity(x) for x in grid]) < 0.0)
    assert np.all(np.diff([red_fidelity(x) for x in grid]) < 0.0)


def test_scaled_rate_column_has_interior_maximum():
    powers = np.geomspace(1e-6, 1.0, 61).tolist()
    frame = sweep_power(_params(0.0), transduction_point(), powers, R0Model.COOPERATIVITY_SCALED)
    best = int(frame["rate_per_s"].to_numpy().argmax())
    assert 0 < best < len(powers) - 1
    # r0 is linear in P, so neighbouring rows differ by a factor 10**0.1
    assert frame["r0_per_s"].iloc[best] == pytest.approx(1e6, rel=0.3)
