from collections.abc import Callable

import pytest

from eo_transducer.converter import power_for_cooperativity
from eo_transducer.core import ModeParams, OperatingPoint, PumpDrive


def normalized_point(
    gamma_a0: float = 1.0,
    optical_ratio: float = 1.0,
    gamma_b0: float = 1.0,
    microwave_ratio: float = 1.0,
    c: float = 0.5,
    pump_detuning: float = 0.0,
) -> OperatingPoint:
    """Operating point in units of the optical intrinsic linewidth, with C set exactly."""
    optical = ModeParams(1e3, gamma_a0, optical_ratio * gamma_a0)
    microwave = ModeParams(1e2, gamma_b0, microwave_ratio * gamma_b0)
    op = OperatingPoint(
        optical_signal=optical,
        optical_pump=optical,
        microwave=microwave,
        g_eo=1.0,
        pump=PumpDrive(power=1.0, detuning=pump_detuning),
    )
    return op.with_power(power_for_cooperativity(op, c))


@pytest.fixture
def unit_point() -> OperatingPoint:
    """Symmetric normalised operating point at C = 0.5."""
    return normalized_point()


@pytest.fixture
def make_point() -> Callable[..., OperatingPoint]:
    """Factory for normalised operating points."""
    return normalized_point
