from .readout import (
    DISPERSIVE_MAP_COLUMNS,
    SEARCH_CEILING,
    UNRESOLVED,
    QubitParams,
    QubitState,
    Tone,
    dispersive_resolution,
    readout_contrast,
    readout_efficiency,
    readout_efficiency_for_state,
    readout_spectrum_labels,
    sweep_dispersive_map,
)

__all__ = [
    "DISPERSIVE_MAP_COLUMNS",
    "SEARCH_CEILING",
    "UNRESOLVED",
    "QubitParams",
    "QubitState",
    "Tone",
    "dispersive_resolution",
    "readout_contrast",
    "readout_efficiency",
    "readout_efficiency_for_state",
    "readout_spectrum_labels",
    "sweep_dispersive_map",
]
