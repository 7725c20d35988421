import math

import pytest
from pydantic import ValidationError

from eo_transducer.converter import cooperativity
from eo_transducer.core import hz_to_angular, thermal_photons
from eo_transducer.presets import OperatingPointSpec, SensingSpec, sensing_point, transduction_point
from eo_transducer.settings import Settings, settings


def test_transduction_design_point():
    op = transduction_point(q_convention="intrinsic")
    assert op.g_eo == pytest.approx(hz_to_angular(46.75))
    assert op.pump.power == pytest.approx(140e-6)
    assert op.pump.detuning == pytest.approx(hz_to_angular(10e6))
    assert op.optical_signal.intrinsic_rate == pytest.approx(hz_to_angular(192.43e12) / 1e7)
    assert op.optical_signal.coupling_rate == pytest.approx(2.3 * op.optical_signal.intrinsic_rate)
    assert op.microwave.coupling_rate == pytest.approx(3.4 * op.microwave.intrinsic_rate)
    assert op.optical_pump.frequency == pytest.approx(hz_to_angular(192.43e12 - 8.93e9))


def test_loaded_convention_sets_total_linewidth():
    op = transduction_point(q_convention="loaded")
    assert op.gamma_b == pytest.approx(hz_to_angular(8.93e9) / 1e5)
    assert op.gamma_a == pytest.approx(hz_to_angular(192.43e12) / 1e7)


def test_cooperativity_override_sets_power():
    op = transduction_point(cooperativity=0.58)
    assert cooperativity(op) == pytest.approx(0.58, rel=1e-12)
    assert op.pump.power != pytest.approx(140e-6)


def test_sensing_point_uses_high_optical_q():
    assert sensing_point(q_convention="intrinsic").optical_signal.intrinsic_rate == pytest.approx(
        hz_to_angular(192.43e12) / 1e8
    )
    assert sensing_point(q_a=5e7, q_convention="intrinsic").optical_signal.intrinsic_rate == pytest.approx(
        hz_to_angular(192.43e12) / 5e7
    )


def test_unknown_override_is_rejected():
    with pytest.raises(ValidationError):
        transduction_point(q_c=1e5)


def test_overrides_are_validated():
    with pytest.raises(ValidationError):
        transduction_point(q_b=-1.0)
    assert transduction_point(q_b="2e5").microwave.frequency == pytest.approx(hz_to_angular(8.93e9))


def test_q_convention_default_follows_settings(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(settings, "q_convention", "loaded")
    assert OperatingPointSpec().q_convention == "loaded"


def test_settings_read_environment(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("EO_TRANSDUCER_SEED", "5")
    monkeypatch.setenv("EO_TRANSDUCER_KAPPA_CONVENTION", "full")
    fresh = Settings()
    assert fresh.seed == 5
    assert fresh.kappa_factor == 1.0
    assert math.isclose(Settings().refractive_index, 2.21)


def test_power_and_cooperativity_are_exclusive():
    with pytest.raises(ValidationError, match="not both"):
        transduction_point(cooperativity=0.58, pump_power_w=1e-3)
    # the default power is not an explicit choice
    assert OperatingPointSpec(cooperativity=0.58).pump_power_w == 140e-6


def test_sensing_spec_occupancy_from_temperature():
    assert SensingSpec().occupancy == 0.0
    assert SensingSpec(thermal_photons=0.3).occupancy == 0.3
    warm = SensingSpec(temperature_k=0.5)
    assert warm.occupancy == pytest.approx(thermal_photons(8.93e9, 0.5), rel=1e-15)
    assert warm.sensing_params(warm.build()).thermal_photons == warm.occupancy
    with pytest.raises(ValidationError, match="not both"):
        SensingSpec(thermal_photons=0.3, temperature_k=0.5)
