import math

import pytest

from eo_transducer.converter import cooperativity, efficiency
from eo_transducer.core import (
    InvalidParameterError,
    InvalidThresholdError,
    OperatingPoint,
    angular_to_hz,
    hz_to_angular,
)
from eo_transducer.presets import transduction_point
from eo_transducer.qed import (
    DISPERSIVE_MAP_COLUMNS,
    UNRESOLVED,
    QubitParams,
    QubitState,
    dispersive_resolution,
    readout_contrast,
    readout_efficiency,
    readout_efficiency_for_state,
    readout_spectrum_labels,
    sweep_dispersive_map,
)


@pytest.fixture
def design_point() -> OperatingPoint:
    """Loaded-Q design point at C = 0.58."""
    return transduction_point(cooperativity=0.58, q_convention="loaded")


def test_zero_shift_recovers_transduction_efficiency(design_point: OperatingPoint):
    assert readout_efficiency(design_point, 0.0) == pytest.approx(
        efficiency(design_point).total_efficiency, rel=1e-12
    )


def test_efficiency_is_even_in_shift(unit_point: OperatingPoint):
    assert readout_efficiency(unit_point, 0.7) == pytest.approx(
        readout_efficiency(unit_point, -0.7)
    )


def test_half_width_is_dressed_linewidth(design_point: OperatingPoint):
    c = cooperativity(design_point)
    half = readout_efficiency(design_point, 0.0) / 2.0
    assert dispersive_resolution(design_point, half) == pytest.approx(
        design_point.gamma_b * (1.0 + c) / 2.0, rel=1e-5
    )


def test_resolution_at_design_point(design_point: OperatingPoint):
    chi_hz = angular_to_hz(dispersive_resolution(design_point, 0.1))
    assert 98e3 / 2.0 <= chi_hz <= 98e3 * 2.0


def test_resolution_shrinks_with_microwave_q():
    low = transduction_point(cooperativity=0.58, q_convention="loaded", q_b=5e4)
    high = transduction_point(cooperativity=0.58, q_convention="loaded", q_b=2e5)
    threshold = 0.5 * min(readout_efficiency(low, 0.0), readout_efficiency(high, 0.0))
    assert dispersive_resolution(high, threshold) < dispersive_resolution(low, threshold)


@pytest.mark.parametrize("fraction", [0.0, 1.0, 1.5, -0.1])
def test_threshold_outside_range_is_rejected(unit_point: OperatingPoint, fraction: float):
    peak = readout_efficiency(unit_point, 0.0)
    with pytest.raises(InvalidThresholdError):
        dispersive_resolution(unit_point, fraction * peak)


def test_unreachable_threshold_is_unresolved(unit_point: OperatingPoint):
    peak = readout_efficiency(unit_point, 0.0)
    assert dispersive_resolution(unit_point, 1e-8 * peak) == UNRESOLVED
    assert math.isinf(UNRESOLVED)


def test_qubit_state_selects_shift(unit_point: OperatingPoint):
    ground = QubitParams(0.9)
    excited = QubitParams(0.9, QubitState.EXCITED)
    assert ground.cavity_shift == 0.0
    assert excited.cavity_shift == 0.9
    assert readout_efficiency_for_state(unit_point, excited) == pytest.approx(
        readout_efficiency(unit_point, 0.9)
    )
    assert readout_contrast(unit_point, 0.9) == pytest.approx(
        readout_efficiency(unit_point, 0.0) - readout_efficiency(unit_point, 0.9)
    )


def test_qubit_state_accepts_strings():
    assert QubitParams(1.0, "excited").state is QubitState.EXCITED  # type: ignore[arg-type]


def test_non_finite_shift_is_rejected(unit_point: OperatingPoint):
    with pytest.raises(InvalidParameterError):
        readout_efficiency(unit_point, math.nan)
    with pytest.raises(InvalidParameterError):
        QubitParams(math.inf)


def test_spectrum_labels(design_point: OperatingPoint):
    chi = hz_to_angular(100e3)
    tones = {tone.label: tone.frequency for tone in readout_spectrum_labels(design_point, chi)}
    omega_p = design_point.optical_pump.frequency
    omega_b = design_point.microwave.frequency
    assert tones["pump"] == omega_p
    assert tones["signal_ground"] == pytest.approx(omega_p + omega_b - chi, rel=1e-15)
    assert tones["signal_excited"] == pytest.approx(omega_p + omega_b + chi, rel=1e-15)
    # the converted signal lands back on the optical signal mode
    assert omega_p + omega_b == pytest.approx(design_point.optical_signal.frequency, rel=1e-12)


def test_dispersive_map_is_q_major(design_point: OperatingPoint):
    chis = [0.0, hz_to_angular(1e5)]
    frame = sweep_dispersive_map(design_point, [1e4, 1e5], chis, 3.4, "loaded")
    assert list(frame.columns) == DISPERSIVE_MAP_COLUMNS
    assert frame["q_b"].tolist() == [1e4, 1e4, 1e5, 1e5]
    assert frame["chi_Hz"].tolist() == pytest.approx([0.0, 1e5, 0.0, 1e5])
    at_design = frame[frame["q_b"] == 1e5]["efficiency"].iloc[0]
    assert at_design == pytest.approx(readout_efficiency(design_point, 0.0), rel=1e-9)


def test_dispersive_map_rejects_empty_axes(design_point: OperatingPoint):
    with pytest.raises(InvalidParameterError):
        sweep_dispersive_map(design_point, [], [0.0], 3.4)
