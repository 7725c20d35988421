from .herald import (
    EntanglementProtocolParams,
    HeraldOutcome,
    Scheme,
    blue_fidelity,
    blue_sideband,
    herald,
    red_fidelity,
    red_sideband,
)
from .simulation import (
    BLUE_CAVITY_KEYS,
    ENTANGLEMENT_COLUMNS,
    MONTE_CARLO_COLUMNS,
    RED_CAVITY_KEYS,
    RNG_ALGORITHM,
    R0Model,
    cooperativity_scaled_rate,
    monte_carlo,
    sweep_power,
)

__all__ = [
    "BLUE_CAVITY_KEYS",
    "ENTANGLEMENT_COLUMNS",
    "MONTE_CARLO_COLUMNS",
    "RED_CAVITY_KEYS",
    "RNG_ALGORITHM",
    "EntanglementProtocolParams",
    "HeraldOutcome",
    "R0Model",
    "Scheme",
    "blue_fidelity",
    "blue_sideband",
    "cooperativity_scaled_rate",
    "herald",
    "monte_carlo",
    "red_fidelity",
    "red_sideband",
    "sweep_power",
]
