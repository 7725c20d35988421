from .coupling import (
    CouplingEstimate,
    CrystalOptics,
    FieldProfile,
    g_eo_from_profile,
    load_field_profile,
    synthetic_profile,
)
from .qbudget import QBudget, dielectric_q, loaded_q

__all__ = [
    "CouplingEstimate",
    "CrystalOptics",
    "FieldProfile",
    "QBudget",
    "dielectric_q",
    "g_eo_from_profile",
    "load_field_profile",
    "loaded_q",
    "synthetic_profile",
]
