from dataclasses import dataclass
from typing import Final


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values in SI units."""

    reduced_planck: float = 1.054571817e-34  # J*s
    vacuum_permittivity: float = 8.8541878128e-12  # F/m
    planck: float = 6.62607015e-34  # J*s
    boltzmann: float = 1.380649e-23  # J/K

    def __post_init__(self) -> None:
        if self.reduced_planck <= 0 or self.vacuum_permittivity <= 0:
            msg = "physical constants must be positive"
            raise ValueError(msg)


CONSTANTS: Final = PhysicalConstants()
HBAR: Final[float] = CONSTANTS.reduced_planck
EPSILON_0: Final[float] = CONSTANTS.vacuum_permittivity
