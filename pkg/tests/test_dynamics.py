import math
from collections.abc import Callable
from dataclasses import replace
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from scipy.linalg import expm

from eo_transducer.converter import efficiency_detuned
from eo_transducer.core import DivergenceError, InvalidParameterError, OperatingPoint
from eo_transducer.dynamics import (
    TRAJECTORY_COLUMNS,
    DormandPrince,
    DriveTone,
    StepControl,
    conversion_efficiency,
    integrate,
    integrate_dispersive,
    write_trajectory_csv,
)
from eo_transducer.qed import readout_efficiency

MATRIX = np.array([[-1.0, 2.0j], [2.0j, -0.5]], dtype=complex)
Y0 = np.array([1.0 + 0.5j, -0.3j], dtype=complex)


def _linear(_t: float, y: np.ndarray) -> np.ndarray:
    return MATRIX @ y


def _exact(t: float) -> np.ndarray:
    return expm(MATRIX * t) @ Y0


def test_fixed_step_is_fifth_order():
    errors = []
    for h in (0.1, 0.05):
        y = DormandPrince(_linear).fixed(0.0, Y0, 1.0, h)
        errors.append(float(np.max(np.abs(y - _exact(1.0)))))
    assert errors[0] / errors[1] > 20.0


def test_adaptive_step_meets_tolerance():
    stepper = DormandPrince(_linear, StepControl(rtol=1e-10, atol=1e-14))
    y, h_next = stepper.advance(0.0, Y0, 2.0, 1e-3)
    assert np.max(np.abs(y - _exact(2.0))) < 1e-8
    assert h_next > 0.0
    assert stepper.steps_taken > 0


def test_non_finite_state_raises():
    stepper = DormandPrince(lambda _t, y: np.full_like(y, np.nan))
    with pytest.raises(DivergenceError):
        stepper.advance(0.0, Y0, 1.0, 0.1)


def test_fixed_step_must_be_positive():
    with pytest.raises(ValueError, match="positive"):
        DormandPrince(_linear).fixed(0.0, Y0, 1.0, 0.0)


@pytest.mark.parametrize("delta", [0.0, 0.3, -1.2])
def test_time_domain_matches_closed_form(unit_point: OperatingPoint, delta: float):
    tone = DriveTone(1.0, delta)
    result = integrate(unit_point, DriveTone(0j, delta), tone, 400.0, 1e-11)
    assert result.converged
    assert conversion_efficiency(result, unit_point, tone) == pytest.approx(
        efficiency_detuned(unit_point, delta), rel=1e-6
    )


def test_fixed_step_reaches_the_same_steady_state(unit_point: OperatingPoint):
    tone = DriveTone(2.0 - 1.0j, 0.2)
    adaptive = integrate(unit_point, DriveTone(0j, 0.2), tone, 400.0, 1e-11)
    fixed = integrate(unit_point, DriveTone(0j, 0.2), tone, 400.0, 1e-11, fixed_step=0.01)
    assert fixed.converged
    assert fixed.steady_state_a == pytest.approx(adaptive.steady_state_a, rel=1e-8)


def test_steady_state_start_converges_in_one_window(unit_point: OperatingPoint):
    tone = DriveTone(1.0)
    first = integrate(unit_point, DriveTone(), tone, 400.0, 1e-11)
    assert first.steady_state_a is not None
    assert first.steady_state_b is not None
    again = integrate(
        unit_point,
        DriveTone(),
        tone,
        400.0,
        1e-8,
        initial=(first.steady_state_a, first.steady_state_b),
    )
    assert again.converged
    assert again.times[-1] == pytest.approx(2.0 / min(unit_point.gamma_a, unit_point.gamma_b))


def test_times_increase_from_zero(unit_point: OperatingPoint):
    result = integrate(unit_point, DriveTone(), DriveTone(1.0), 50.0, 1e-6)
    assert result.times[0] == 0.0
    assert np.all(np.diff(result.times) > 0.0)
    assert result.a_amplitude.shape == result.times.shape


def test_short_horizon_does_not_converge(unit_point: OperatingPoint):
    tone = DriveTone(1.0)
    result = integrate(unit_point, DriveTone(), tone, 0.1, 1e-10)
    assert not result.converged
    assert result.steady_state_a is None
    with pytest.raises(InvalidParameterError, match="converge"):
        conversion_efficiency(result, unit_point, tone)


def test_zero_drive_efficiency_is_rejected(unit_point: OperatingPoint):
    silent = DriveTone()
    result = integrate(unit_point, silent, silent, 50.0, 1e-8)
    assert result.converged
    with pytest.raises(InvalidParameterError, match="zero"):
        conversion_efficiency(result, unit_point, silent)


def test_drives_must_share_a_frame(unit_point: OperatingPoint):
    with pytest.raises(InvalidParameterError):
        integrate(unit_point, DriveTone(0j, 0.1), DriveTone(1.0, 0.2), 10.0, 1e-8)


@pytest.mark.parametrize(("horizon", "tolerance"), [(0.0, 1e-8), (10.0, 0.0), (10.0, 1e-2)])
def test_run_parameters_are_validated(
    unit_point: OperatingPoint, horizon: float, tolerance: float
):
    with pytest.raises(InvalidParameterError):
        integrate(unit_point, DriveTone(), DriveTone(1.0), horizon, tolerance)


@pytest.mark.parametrize("chi", [0.0, 0.8, -5.0])
def test_dispersive_readout_matches_closed_form(unit_point: OperatingPoint, chi: float):
    drive = DriveTone(1.0)
    result = integrate_dispersive(unit_point, chi, drive, 400.0, 1e-11)
    assert result.converged
    assert conversion_efficiency(result, unit_point, drive) == pytest.approx(
        readout_efficiency(unit_point, chi), rel=1e-6
    )
    # the reported trajectory differs from the fixed-point frame by a phase only
    assert abs(result.a_amplitude[-1]) == pytest.approx(abs(result.steady_state_a), rel=1e-9)


def test_dispersive_drive_must_be_on_resonance(unit_point: OperatingPoint):
    with pytest.raises(InvalidParameterError):
        integrate_dispersive(unit_point, 0.5, DriveTone(1.0, 0.1), 10.0, 1e-8)


def test_write_trajectory_csv(tmp_path: Path, unit_point: OperatingPoint):
    result = integrate(unit_point, DriveTone(), DriveTone(1.0), 20.0, 1e-6)
    path = write_trajectory_csv(result, tmp_path / "out" / "trajectory.csv")
    frame = pd.read_csv(path, float_precision="round_trip")
    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert len(frame) == result.times.size
    assert np.array_equal(frame["re_a"].to_numpy(), result.a_amplitude.real)


@pytest.fixture
def decoupled(unit_point: OperatingPoint) -> OperatingPoint:
    return replace(unit_point, g_eo=0.0)


def test_decoupled_microwave_steady_state(decoupled: OperatingPoint):
    drive = DriveTone(1.5 - 0.5j)
    result = integrate(decoupled, DriveTone(), drive, 400.0, 1e-11)
    assert result.converged
    assert result.steady_state_b is not None
    expected = 2.0 * math.sqrt(decoupled.microwave.coupling_rate) * abs(drive.amplitude)
    assert abs(result.steady_state_b) == pytest.approx(expected / decoupled.gamma_b, rel=1e-8)
    assert result.steady_state_a == pytest.approx(0j, abs=1e-12)


@pytest.mark.parametrize("delta", [0.0, 0.7])
def test_decoupled_energy_balance(make_point: Callable[..., OperatingPoint], delta: float):
    op = replace(make_point(gamma_b0=0.6, microwave_ratio=2.5), g_eo=0.0)
    drive = DriveTone(2.0, delta)
    result = integrate(op, DriveTone(0j, delta), drive, 400.0, 1e-11)
    assert result.converged
    assert result.steady_state_b is not None
    b = result.steady_state_b
    reflected = drive.amplitude + math.sqrt(op.microwave.coupling_rate) * b
    dissipated = op.microwave.intrinsic_rate * abs(b) ** 2
    assert abs(reflected) ** 2 + dissipated == pytest.approx(abs(drive.amplitude) ** 2, rel=1e-8)


def test_undriven_modes_decay_to_zero(decoupled: OperatingPoint):
    start = (1.0 + 1.0j, -2.0 + 0.5j)
    result = integrate(decoupled, DriveTone(), DriveTone(), 400.0, 1e-9, initial=start)
    assert result.converged
    scale = max(abs(z) for z in start)
    assert abs(result.a_amplitude[-1]) < 1e-7 * scale
    assert abs(result.b_amplitude[-1]) < 1e-7 * scale
