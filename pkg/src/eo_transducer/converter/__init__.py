from .optimize import grid_argmax, maximize
from .steady_state import (
    ConversionResult,
    bandwidth,
    cooperativity,
    efficiency,
    efficiency_detuned,
    half_max_points,
    internal_efficiency,
    power_for_cooperativity,
    pump_amplitude,
    pump_photon_flux,
    pump_photon_number,
)
from .sweeps import (
    BANDWIDTH_COLUMNS,
    COUPLING_COLUMNS,
    DETUNING_COLUMNS,
    DETUNING_MAP_COLUMNS,
    POWER_COLUMNS,
    optimal_coupling,
    sweep_bandwidth_vs_qb,
    sweep_detuning,
    sweep_detuning_map,
    sweep_optical_coupling,
    sweep_pump_power,
)

__all__ = [
    "BANDWIDTH_COLUMNS",
    "COUPLING_COLUMNS",
    "DETUNING_COLUMNS",
    "DETUNING_MAP_COLUMNS",
    "POWER_COLUMNS",
    "ConversionResult",
    "bandwidth",
    "cooperativity",
    "efficiency",
    "efficiency_detuned",
    "grid_argmax",
    "half_max_points",
    "internal_efficiency",
    "maximize",
    "optimal_coupling",
    "power_for_cooperativity",
    "pump_amplitude",
    "pump_photon_flux",
    "pump_photon_number",
    "sweep_bandwidth_vs_qb",
    "sweep_detuning",
    "sweep_detuning_map",
    "sweep_optical_coupling",
    "sweep_pump_power",
]
