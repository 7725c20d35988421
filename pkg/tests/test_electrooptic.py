import math
from pathlib import Path

import numpy as np
import pytest

from eo_transducer.core import (
    InvalidParameterError,
    InvalidProfileError,
    angular_to_hz,
    hz_to_angular,
)
from eo_transducer.electrooptic import (
    CrystalOptics,
    FieldProfile,
    QBudget,
    dielectric_q,
    g_eo_from_profile,
    load_field_profile,
    loaded_q,
    synthetic_profile,
)
from eo_transducer.electrooptic.coupling import ProfileKind

OMEGA_A = hz_to_angular(192.43e12)
OMEGA_B = hz_to_angular(8.93e9)
LITHIUM_NIOBATE = CrystalOptics(2.21, 30.8e-12)


def _g_hz(profile: FieldProfile) -> float:
    estimate = g_eo_from_profile(profile, LITHIUM_NIOBATE, OMEGA_A, OMEGA_A, OMEGA_B)
    return angular_to_hz(estimate.magnitude)


def test_dielectric_q():
    assert dielectric_q(0.96, 1e-5) == pytest.approx(1.0417e5, rel=1e-4)
    assert dielectric_q(0.5, 0.0) == math.inf


def test_loaded_q_single_dielectric_term():
    budget = QBudget(participation=0.96, loss_tangent=1e-5)
    assert loaded_q(budget) == pytest.approx(1.0417e5, rel=1e-4)


def test_loaded_q_double_count_halves_dielectric_limit():
    budget = QBudget(participation=0.96, loss_tangent=1e-5)
    assert loaded_q(budget, double_count_dielectric=True) == pytest.approx(
        loaded_q(budget) / 2.0
    )


def test_loaded_q_combines_all_channels():
    budget = QBudget(
        participation=1.0,
        loss_tangent=1e-5,
        intrinsic_q=1e5,
        input_coupler_q=1e5,
        output_coupler_q=math.inf,
    )
    assert loaded_q(budget) == pytest.approx(1e5 / 3.0)


def test_lossless_budget_is_infinite():
    assert loaded_q(QBudget(participation=0.3, loss_tangent=0.0)) == math.inf


@pytest.mark.parametrize(
    "kwargs",
    [
        {"participation": 0.0, "loss_tangent": 1e-5},
        {"participation": 1.2, "loss_tangent": 1e-5},
        {"participation": 0.5, "loss_tangent": -1e-5},
        {"participation": 0.5, "loss_tangent": 1e-5, "input_coupler_q": 0.0},
    ],
)
def test_budget_validation(kwargs: dict[str, float]):
    with pytest.raises(InvalidParameterError):
        QBudget(**kwargs)


@pytest.mark.parametrize(("kind", "expected_hz"), [("uniform", 88.0), ("abs_cos", 56.0)])
def test_g_eo_reference_profiles(kind: ProfileKind, expected_hz: float):
    profile = synthetic_profile(kind, 1e10)
    assert _g_hz(profile) == pytest.approx(expected_hz, rel=1e-2)


def test_abs_cos_to_uniform_ratio_is_two_over_pi():
    ratio = _g_hz(synthetic_profile("abs_cos", 1e10)) / _g_hz(synthetic_profile("uniform", 1e10))
    assert ratio == pytest.approx(2.0 / math.pi, rel=1e-4)


def test_cos_profile_cancels():
    assert _g_hz(synthetic_profile("cos", 1e10)) < 1e-9 * _g_hz(synthetic_profile("uniform", 1e10))


def test_g_eo_scales_with_field_and_energy():
    profile = synthetic_profile("uniform", 1e10)
    base = _g_hz(profile)
    assert _g_hz(profile.scaled(3.0)) == pytest.approx(3.0 * base)
    assert _g_hz(profile.with_energy(4.0)) == pytest.approx(base / 2.0)


def test_sign_follows_loop_integral():
    profile = synthetic_profile("uniform", -1e10)
    estimate = g_eo_from_profile(profile, LITHIUM_NIOBATE, OMEGA_A, OMEGA_A, OMEGA_B)
    assert estimate.signed < 0.0
    assert estimate.magnitude == -estimate.signed


@pytest.mark.parametrize(
    ("phi", "field"),
    [
        ([0.0, 1.0, 2.0], [1.0, 1.0, 1.0]),
        ([0.0, 2.0, 1.0, 3.0], [1.0, 1.0, 1.0, 1.0]),
        ([0.0, 1.0, 2.0, 7.0], [1.0, 1.0, 1.0, 1.0]),
        ([0.0, 1.0, 2.0, 3.0], [1.0, math.inf, 1.0, 1.0]),
    ],
)
def test_profile_validation(phi: list[float], field: list[float]):
    with pytest.raises(InvalidProfileError):
        FieldProfile(np.array(phi), np.array(field))


def test_profile_rejects_non_positive_energy():
    with pytest.raises(InvalidProfileError):
        synthetic_profile("uniform", 1e10, stored_energy=0.0)


def test_load_field_profile(tmp_path: Path):
    path = tmp_path / "profile.csv"
    rows = "\n".join(f"{deg},1e10" for deg in range(360))
    path.write_text(f"phi_degrees,field_V_per_m\n{rows}\n", encoding="utf-8")
    profile = load_field_profile(path)
    assert profile.phi.size == 360
    assert _g_hz(profile) == pytest.approx(_g_hz(synthetic_profile("uniform", 1e10, samples=360)))


def test_load_field_profile_rejects_bad_header(tmp_path: Path):
    path = tmp_path / "profile.csv"
    path.write_text("angle,field\n0,1\n90,1\n180,1\n270,1\n", encoding="utf-8")
    with pytest.raises(InvalidProfileError, match="header"):
        load_field_profile(path)


def test_load_field_profile_reports_bad_row(tmp_path: Path):
    path = tmp_path / "profile.csv"
    path.write_text(
        "phi_degrees,field_V_per_m\n0,1\n90,oops\n180,1\n270,1\n", encoding="utf-8"
    )
    with pytest.raises(InvalidProfileError, match="row 3"):
        load_field_profile(path)


def test_missing_profile_is_os_error(tmp_path: Path):
    with pytest.raises(OSError):
        load_field_profile(tmp_path / "absent.csv")
