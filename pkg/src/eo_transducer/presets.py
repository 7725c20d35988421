"""
Design operating points, written in Hz-domain units.

`OperatingPointSpec` is the single place where cyclic frequencies become
angular ones. Figure override models inherit from it, so `--set q_b=2e5`
is validated by the same schema.
"""

from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from eo_transducer.converter.steady_state import power_for_cooperativity
from eo_transducer.core.model import (
    ModeParams,
    OperatingPoint,
    PumpDrive,
    hz_to_angular,
    mode_for_convention,
    thermal_photons as thermal_occupancy,
)
from eo_transducer.sensing import SensingParams
from eo_transducer.settings import settings

ERR_POWER_AND_COOPERATIVITY = "set either pump_power_w or cooperativity, not both"
ERR_THERMAL_AND_TEMPERATURE = "set either thermal_photons or temperature_k, not both"


class OperatingPointSpec(BaseModel):
    """
    Transducer design parameters as quoted in Hz, W and quality factors.

    Attributes:
        optical_frequency_hz: signal WGM resonance
        microwave_frequency_hz: microwave resonance, also the pump offset
        q_a: optical quality factor (signal and pump modes)
        q_b: microwave quality factor
        optical_coupling_ratio: gamma_ac / gamma_a0
        microwave_coupling_ratio: gamma_bc / gamma_b0
        g_eo_hz: single-photon coupling g_eo / 2 pi
        pump_detuning_hz: delta_p / 2 pi
        pump_power_w: pump power at the coupler
        q_convention: read q_a and q_b as intrinsic or loaded
        use_pump_mode_loss: let the pump mode's own rates set n_p
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    optical_frequency_hz: float = Field(default=192.43e12, gt=0)
    microwave_frequency_hz: float = Field(default=8.93e9, gt=0)
    q_a: float = Field(default=1e7, gt=0)
    q_b: float = Field(default=1e5, gt=0)
    optical_coupling_ratio: float = Field(default=2.3, ge=0)
    microwave_coupling_ratio: float = Field(default=3.4, ge=0)
    g_eo_hz: float = Field(default=46.75, ge=0)
    pump_detuning_hz: float = 10e6
    pump_power_w: float = Field(default=140e-6, ge=0)
    q_convention: Literal["intrinsic", "loaded"] = Field(
        default_factory=lambda: settings.q_convention
    )
    use_pump_mode_loss: bool = False
    # when set, the pump power is the one reaching this C
    cooperativity: float | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _one_power_source(self) -> Self:
        if self.cooperativity is not None and "pump_power_w" in self.model_fields_set:
            raise ValueError(ERR_POWER_AND_COOPERATIVITY)
        return self

    def mode(self, frequency_hz: float, q: float, ratio: float) -> ModeParams:
        return mode_for_convention(hz_to_angular(frequency_hz), q, ratio, self.q_convention)

    def build(self) -> OperatingPoint:
        pump_hz = self.optical_frequency_hz - self.microwave_frequency_hz
        op = OperatingPoint(
            optical_signal=self.mode(
                self.optical_frequency_hz, self.q_a, self.optical_coupling_ratio
            ),
            optical_pump=self.mode(pump_hz, self.q_a, self.optical_coupling_ratio),
            microwave=self.mode(
                self.microwave_frequency_hz, self.q_b, self.microwave_coupling_ratio
            ),
            g_eo=hz_to_angular(self.g_eo_hz),
            pump=PumpDrive(
                power=self.pump_power_w,
                detuning=hz_to_angular(self.pump_detuning_hz),
            ),
            use_pump_mode_loss=self.use_pump_mode_loss,
        )
        if self.cooperativity is not None:
            op = op.with_power(power_for_cooperativity(op, self.cooperativity))
        return op


def transduction_point(**overrides: object) -> OperatingPoint:
    """Main design point: Q_a = 1e7, Q_b = 1e5, g_eo = 2 pi x 46.75 Hz, 140 uW."""
    return OperatingPointSpec.model_validate(overrides).build()


def sensing_point(**overrides: object) -> OperatingPoint:
    """Sensing design point: as transduction_point but with an optical Q of 1e8."""
    return OperatingPointSpec.model_validate({"q_a": 1e8, **overrides}).build()


class SensingSpec(OperatingPointSpec):
    """
    Operating point plus the sensing-model inputs.

    The microwave occupancy is either given directly as thermal_photons or
    derived from temperature_k at the microwave frequency.
    """

    detuning_hz: float = 0.0
    thermal_photons: float = Field(default=0.0, ge=0)
    temperature_k: float | None = Field(default=None, ge=0)
    kappa_convention: Literal["half", "full"] = Field(
        default_factory=lambda: settings.kappa_convention
    )

    @model_validator(mode="after")
    def _one_occupancy_source(self) -> Self:
        if self.temperature_k is not None and "thermal_photons" in self.model_fields_set:
            raise ValueError(ERR_THERMAL_AND_TEMPERATURE)
        return self

    @property
    def occupancy(self) -> float:
        if self.temperature_k is None:
            return self.thermal_photons
        return thermal_occupancy(self.microwave_frequency_hz, self.temperature_k)

    def sensing_params(self, op: OperatingPoint) -> SensingParams:
        return SensingParams.from_operating_point(op, self.occupancy, self.kappa_convention)
