from .noise import (
    KAPPA_FACTORS,
    NOISE_COLUMNS,
    SensingParams,
    bae_threshold,
    kappa_factor,
    noise_bae,
    noise_floors,
    noise_standard,
    pump_minimized_standard,
    sweep_noise_vs_power,
)

__all__ = [
    "KAPPA_FACTORS",
    "NOISE_COLUMNS",
    "SensingParams",
    "bae_threshold",
    "kappa_factor",
    "noise_bae",
    "noise_floors",
    "noise_standard",
    "pump_minimized_standard",
    "sweep_noise_vs_power",
]
