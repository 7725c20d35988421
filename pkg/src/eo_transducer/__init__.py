from eo_transducer.converter import bandwidth, cooperativity, efficiency
from eo_transducer.core import ModeParams, OperatingPoint, PumpDrive, TransducerError
from eo_transducer.presets import OperatingPointSpec, sensing_point, transduction_point

__all__ = [
    "ModeParams",
    "OperatingPoint",
    "OperatingPointSpec",
    "PumpDrive",
    "TransducerError",
    "bandwidth",
    "cooperativity",
    "efficiency",
    "sensing_point",
    "transduction_point",
]
