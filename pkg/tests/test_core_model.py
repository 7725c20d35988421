import math

import pytest

from eo_transducer.core import (
    InvalidParameterError,
    ModeParams,
    OperatingPoint,
    PumpDrive,
    angular_to_hz,
    hz_to_angular,
    mode_for_convention,
    mode_from_loaded_q,
    mode_from_q,
    thermal_photons,
)
from eo_transducer.core.parallel import map_rows


def test_unit_conversion_is_two_pi():
    assert hz_to_angular(1.0) == pytest.approx(2.0 * math.pi)
    assert angular_to_hz(hz_to_angular(46.75)) == pytest.approx(46.75, rel=1e-15)


def test_mode_from_intrinsic_q():
    mode = mode_from_q(1e6, 1e3, 2.0)
    assert mode.intrinsic_rate == pytest.approx(1e3)
    assert mode.coupling_rate == pytest.approx(2e3)
    assert mode.total_rate == pytest.approx(3e3)
    assert mode.extraction_ratio == pytest.approx(2.0 / 3.0)


def test_mode_from_loaded_q_sets_total_rate():
    mode = mode_from_loaded_q(1e6, 1e3, 2.0)
    assert mode.total_rate == pytest.approx(1e3)
    assert mode.coupling_rate / mode.intrinsic_rate == pytest.approx(2.0)


@pytest.mark.parametrize(
    ("convention", "total"), [("intrinsic", 3e3), ("loaded", 1e3)]
)
def test_mode_for_convention(convention: str, total: float):
    assert mode_for_convention(1e6, 1e3, 2.0, convention).total_rate == pytest.approx(total)


def test_uncoupled_mode_has_zero_extraction():
    assert ModeParams(1.0, 1.0).extraction_ratio == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"frequency": 0.0, "intrinsic_rate": 1.0},
        {"frequency": 1.0, "intrinsic_rate": -1.0},
        {"frequency": 1.0, "intrinsic_rate": 1.0, "coupling_rate": math.nan},
    ],
)
def test_mode_rejects_invalid_rates(kwargs: dict[str, float]):
    with pytest.raises(InvalidParameterError):
        ModeParams(**kwargs)


def test_operating_point_rejects_zero_linewidth():
    optical = ModeParams(1.0, 1.0, 1.0)
    with pytest.raises(InvalidParameterError, match="microwave"):
        OperatingPoint(optical, optical, ModeParams(1.0, 0.0, 0.0), 1.0, PumpDrive(1.0))


def test_pump_rejects_negative_power():
    with pytest.raises(InvalidParameterError):
        PumpDrive(power=-1e-3)


def test_coupling_ratio_update_keeps_intrinsic_rate():
    mode = ModeParams(1.0, 2.0, 1.0).with_coupling_ratio(3.4)
    assert mode.intrinsic_rate == 2.0
    assert mode.coupling_rate == pytest.approx(6.8)


def test_thermal_photons():
    assert thermal_photons(8.93e9, 0.0) == 0.0
    # high-temperature limit kT/hf - 1/2
    x = 6.62607015e-34 * 8.93e9 / (1.380649e-23 * 10.0)
    assert thermal_photons(8.93e9, 10.0) == pytest.approx(1.0 / x - 0.5, rel=1e-3)


def test_map_rows_keeps_input_order():
    items = list(range(50))
    assert map_rows(lambda v: v * v, items, workers=4) == [v * v for v in items]
    assert map_rows(lambda v: v + 1, items) == [v + 1 for v in items]
