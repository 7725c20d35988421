from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict

QConvention = Literal["intrinsic", "loaded"]
KappaConvention = Literal["half", "full"]


class Settings(BaseSettings):
    """
    Toolkit settings shared by the CLI, the figure presets and the validators.

    Every quantity here is in Hz-domain / SI units; angular conversion happens
    where the values are turned into domain objects.
    """

    # Extraordinary refractive index of lithium niobate near 1550 nm
    refractive_index: float = 2.21
    # Linear electro-optic coefficient r33 in m/V
    electrooptic_coeff: float = 30.8e-12
    # Stored microwave energy W that normalizes a field profile, in J
    stored_energy: float = 1.0

    # How quoted Q values are read: intrinsic (default) or loaded
    q_convention: QConvention = "intrinsic"
    # Count the dielectric term of the loaded-Q combiner twice, as printed
    double_count_dielectric: bool = False
    # kappa = gamma/2 ("half") or kappa = gamma ("full") in the noise spectra
    kappa_convention: KappaConvention = "half"
    # Fixed detuning of the sensing sweep, in Hz
    sensing_detuning_hz: float = 0.0

    # Where figure and sweep artefacts are written
    output_dir: Path = Path("results")
    # Monte Carlo seed, attempt count and partition count
    seed: int = 20240601
    mc_attempts: int = 1_000_000
    mc_partitions: int = 8
    # Thread count for row-parallel sweeps (1 = sequential)
    workers: int = 1

    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_prefix="EO_TRANSDUCER_",
        env_file=".env",
        extra="ignore",
    )

    @property
    def kappa_factor(self) -> float:
        """Ratio kappa / gamma implied by kappa_convention."""
        return 0.5 if self.kappa_convention == "half" else 1.0


# Create a global settings instance
settings = Settings()
