"""
Shared domain types and unit conversions.

All rates and frequencies held by these types are angular (rad/s). Hz values
enter and leave only through `hz_to_angular` / `angular_to_hz`, which the CLI
and the presets apply exactly once at the boundary. Every linewidth is a full
energy-decay rate; amplitude equations use gamma/2.
"""

import math
from dataclasses import dataclass, replace

from eo_transducer.core.constants import CONSTANTS
from eo_transducer.core.errors import InvalidParameterError

ERR_NOT_FINITE = "{name} must be finite, got {value!r}"
ERR_NOT_POSITIVE = "{name} must be positive, got {value!r}"
ERR_NEGATIVE = "{name} must be non-negative, got {value!r}"
ERR_ZERO_LINEWIDTH = "{name} mode has zero total linewidth"


def _require_finite(value: float, name: str) -> None:
    if not math.isfinite(value):
        raise InvalidParameterError(ERR_NOT_FINITE.format(name=name, value=value))


def _require_positive(value: float, name: str) -> None:
    _require_finite(value, name)
    if value <= 0.0:
        raise InvalidParameterError(ERR_NOT_POSITIVE.format(name=name, value=value))


def _require_non_negative(value: float, name: str) -> None:
    _require_finite(value, name)
    if value < 0.0:
        raise InvalidParameterError(ERR_NEGATIVE.format(name=name, value=value))


@dataclass(frozen=True)
class ModeParams:
    """
    One resonant mode and its loss budget.

    Attributes:
        frequency: resonance, rad/s
        intrinsic_rate: internal energy-decay linewidth gamma_{m,0}, rad/s
        coupling_rate: external (port) linewidth gamma_{m,c}, rad/s
    """

    frequency: float
    intrinsic_rate: float
    coupling_rate: float = 0.0

    def __post_init__(self) -> None:
        _require_positive(self.frequency, "frequency")
        _require_non_negative(self.intrinsic_rate, "intrinsic_rate")
        _require_non_negative(self.coupling_rate, "coupling_rate")

    @property
    def total_rate(self) -> float:
        return self.intrinsic_rate + self.coupling_rate

    @property
    def extraction_ratio(self) -> float:
        """Fraction gamma_c / gamma of photons leaving through the port."""
        total = self.total_rate
        return self.coupling_rate / total if total > 0 else 0.0

    def with_coupling_ratio(self, ratio: float) -> "ModeParams":
        _require_non_negative(ratio, "coupling ratio")
        return replace(self, coupling_rate=ratio * self.intrinsic_rate)


@dataclass(frozen=True)
class PumpDrive:
    """Optical pump: power in W and detuning delta_p in rad/s."""

    power: float
    detuning: float = 0.0

    def __post_init__(self) -> None:
        _require_non_negative(self.power, "pump power")
        _require_finite(self.detuning, "pump detuning")


@dataclass(frozen=True)
class OperatingPoint:
    """
    Complete transducer configuration: three modes, coupling and pump.

    Attributes:
        optical_signal: optical mode a
        optical_pump: optical mode p (only its frequency enters the pump photon
            number unless use_pump_mode_loss is set)
        microwave: microwave mode b
        g_eo: single-photon electro-optic coupling, rad/s
        pump: optical pump drive
        use_pump_mode_loss: take the pump mode's own rates for the intracavity
            pump amplitude instead of the signal mode's
    """

    optical_signal: ModeParams
    optical_pump: ModeParams
    microwave: ModeParams
    g_eo: float
    pump: PumpDrive
    use_pump_mode_loss: bool = False

    def __post_init__(self) -> None:
        _require_non_negative(self.g_eo, "g_eo")
        if self.optical_signal.total_rate <= 0.0:
            raise InvalidParameterError(ERR_ZERO_LINEWIDTH.format(name="optical"))
        if self.microwave.total_rate <= 0.0:
            raise InvalidParameterError(ERR_ZERO_LINEWIDTH.format(name="microwave"))
        if self.use_pump_mode_loss and self.optical_pump.total_rate <= 0.0:
            raise InvalidParameterError(ERR_ZERO_LINEWIDTH.format(name="pump"))

    @property
    def gamma_a(self) -> float:
        return self.optical_signal.total_rate

    @property
    def gamma_b(self) -> float:
        return self.microwave.total_rate

    def with_power(self, power: float) -> "OperatingPoint":
        return replace(self, pump=replace(self.pump, power=power))

    def with_signal_coupling_ratio(self, ratio: float) -> "OperatingPoint":
        return replace(
            self, optical_signal=self.optical_signal.with_coupling_ratio(ratio)
        )

    def with_microwave(self, microwave: ModeParams) -> "OperatingPoint":
        return replace(self, microwave=microwave)

    def with_optical_signal(self, optical_signal: ModeParams) -> "OperatingPoint":
        return replace(self, optical_signal=optical_signal)


def hz_to_angular(f: float) -> float:
    """Convert a cyclic frequency in Hz to rad/s."""
    return 2.0 * math.pi * f


def angular_to_hz(omega: float) -> float:
    """Convert rad/s back to Hz."""
    return omega / (2.0 * math.pi)


def mode_from_q(
    frequency: float, intrinsic_q: float, coupling_ratio: float
) -> ModeParams:
    """
    Build a mode from its intrinsic quality factor.

    intrinsic_rate = frequency / Q_0 and coupling_rate = ratio * intrinsic_rate.
    """
    _require_positive(frequency, "frequency")
    _require_positive(intrinsic_q, "intrinsic_q")
    _require_non_negative(coupling_ratio, "coupling_ratio")
    intrinsic_rate = frequency / intrinsic_q
    return ModeParams(
        frequency=frequency,
        intrinsic_rate=intrinsic_rate,
        coupling_rate=coupling_ratio * intrinsic_rate,
    )


def mode_from_loaded_q(
    frequency: float, loaded_q: float, coupling_ratio: float
) -> ModeParams:
    """Build a mode whose total linewidth is frequency / Q_L."""
    _require_positive(frequency, "frequency")
    _require_positive(loaded_q, "loaded_q")
    _require_non_negative(coupling_ratio, "coupling_ratio")
    intrinsic_rate = frequency / loaded_q / (1.0 + coupling_ratio)
    return ModeParams(
        frequency=frequency,
        intrinsic_rate=intrinsic_rate,
        coupling_rate=coupling_ratio * intrinsic_rate,
    )


def thermal_photons(frequency_hz: float, temperature_k: float) -> float:
    """Bose-Einstein occupancy of a mode at frequency_hz and temperature_k."""
    _require_positive(frequency_hz, "frequency_hz")
    _require_non_negative(temperature_k, "temperature_k")
    if temperature_k == 0.0:
        return 0.0
    x = CONSTANTS.planck * frequency_hz / (CONSTANTS.boltzmann * temperature_k)
    return 1.0 / math.expm1(x)


def mode_for_convention(
    frequency: float, q: float, coupling_ratio: float, convention: str
) -> ModeParams:
    """Dispatch to mode_from_q ("intrinsic") or mode_from_loaded_q ("loaded")."""
    if convention == "loaded":
        return mode_from_loaded_q(frequency, q, coupling_ratio)
    return mode_from_q(frequency, q, coupling_ratio)
