from .constants import CONSTANTS, EPSILON_0, HBAR, PhysicalConstants
from .errors import (
    ConfigError,
    DivergenceError,
    DivisionGuardError,
    InvalidParameterError,
    InvalidProfileError,
    InvalidThresholdError,
    TransducerError,
    UndefinedBandwidthError,
    UsageError,
)
from .model import (
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

__all__ = [
    "CONSTANTS",
    "EPSILON_0",
    "HBAR",
    "ConfigError",
    "DivergenceError",
    "DivisionGuardError",
    "InvalidParameterError",
    "InvalidProfileError",
    "InvalidThresholdError",
    "ModeParams",
    "OperatingPoint",
    "PhysicalConstants",
    "PumpDrive",
    "TransducerError",
    "UndefinedBandwidthError",
    "UsageError",
    "angular_to_hz",
    "hz_to_angular",
    "mode_for_convention",
    "mode_from_loaded_q",
    "mode_from_q",
    "thermal_photons",
]
