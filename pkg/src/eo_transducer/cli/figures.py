"""
Figure registry.

Each figure couples a pydantic override model (the design point plus the
sweep grid, all in Hz-domain units) with a builder that returns the result
table. `run_figure` validates `key=value` overrides against that model,
writes the table and then the manifest.
"""

import time
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import structlog
from pydantic import Field, ValidationError

from eo_transducer.cli.manifest import RunManifest
from eo_transducer.cli.tables import write_table
from eo_transducer.converter import (
    sweep_bandwidth_vs_qb,
    sweep_detuning_map,
    sweep_optical_coupling,
    sweep_pump_power,
)
from eo_transducer.core.errors import UsageError
from eo_transducer.core.model import hz_to_angular
from eo_transducer.entanglement import (
    EntanglementProtocolParams,
    R0Model,
    Scheme,
    sweep_power,
)
from eo_transducer.presets import OperatingPointSpec, SensingSpec
from eo_transducer.qed import sweep_dispersive_map
from eo_transducer.sensing import sweep_noise_vs_power
from eo_transducer.settings import settings

logger = structlog.get_logger(__name__)

ERR_UNKNOWN_FIGURE = "unknown figure '{name}'; choose from {choices}"
ERR_ASSIGNMENT = "override '{item}' is not of the form key=value"
ERR_UNKNOWN_KEY = "figure '{name}' has no parameter '{key}'"
ERR_BAD_VALUE = "invalid value for '{key}' in figure '{name}': {message}"


class CouplingOverrides(OperatingPointSpec):
    ratio_min: float = Field(default=0.05, gt=0)
    ratio_max: float = Field(default=5.0, gt=0)
    ratio_count: int = Field(default=500, ge=2)


class PowerOverrides(OperatingPointSpec):
    power_min_w: float = Field(default=1e-6, gt=0)
    power_max_w: float = Field(default=1e-2, gt=0)
    power_count: int = Field(default=81, ge=2)


class BandwidthOverrides(OperatingPointSpec):
    q_b_min: float = Field(default=1e4, gt=0)
    q_b_max: float = Field(default=1e6, gt=0)
    q_b_count: int = Field(default=41, ge=2)
    detuning_max_hz: float = Field(default=5e6, gt=0)
    detuning_count: int = Field(default=201, ge=2)


class DispersiveOverrides(OperatingPointSpec):
    cooperativity: float | None = Field(default=0.58, ge=0)
    q_b_min: float = Field(default=1e4, gt=0)
    q_b_max: float = Field(default=1e6, gt=0)
    q_b_count: int = Field(default=21, ge=2)
    chi_max_hz: float = Field(default=500e3, gt=0)
    chi_count: int = Field(default=101, ge=2)


class EntanglementOverrides(OperatingPointSpec):
    scheme: Scheme = Scheme.BLUE
    r0_model: R0Model = R0Model.DIRECT
    power_min_w: float = Field(default=1e-7, gt=0)
    power_max_w: float = Field(default=1e-2, gt=0)
    power_count: int = Field(default=51, ge=2)
    # direct model: r0 grid aligned row by row with the power grid
    r0_min: float = Field(default=1e3, gt=0)
    r0_max: float = Field(default=1e8, gt=0)
    attempt_duration_s: float = Field(default=1e-6, gt=0)
    reset_time_s: float = Field(default=1e-6, ge=0)
    monte_carlo: bool = False
    attempts: int = Field(default_factory=lambda: settings.mc_attempts, ge=1)
    seed: int = Field(default_factory=lambda: settings.seed)


class NoiseOverrides(SensingSpec):
    q_a: float = Field(default=1e8, gt=0)
    power_min_w: float = Field(default=1e-6, gt=0)
    power_max_w: float = Field(default=10.0, gt=0)
    power_count: int = Field(default=71, ge=2)
    detuning_hz: float = Field(default_factory=lambda: settings.sensing_detuning_hz)


def _coupling_table(p: CouplingOverrides, workers: int) -> pd.DataFrame:
    ratios = np.linspace(p.ratio_min, p.ratio_max, p.ratio_count).tolist()
    return sweep_optical_coupling(p.build(), ratios, workers)


def _power_table(p: PowerOverrides, workers: int) -> pd.DataFrame:
    # the design power is always one of the rows
    grid = np.geomspace(p.power_min_w, p.power_max_w, p.power_count)
    powers = np.unique(np.append(grid, p.pump_power_w)).tolist()
    return sweep_pump_power(p.build(), powers, workers)


def _detuning_map_table(p: BandwidthOverrides, workers: int) -> pd.DataFrame:
    q_values = np.geomspace(p.q_b_min, p.q_b_max, p.q_b_count).tolist()
    deltas = [
        hz_to_angular(f)
        for f in np.linspace(-p.detuning_max_hz, p.detuning_max_hz, p.detuning_count)
    ]
    return sweep_detuning_map(
        p.build(), q_values, deltas, p.microwave_coupling_ratio, p.q_convention, workers
    )


def _bandwidth_table(p: BandwidthOverrides, workers: int) -> pd.DataFrame:
    q_values = np.geomspace(p.q_b_min, p.q_b_max, p.q_b_count).tolist()
    return sweep_bandwidth_vs_qb(
        p.build(), q_values, p.microwave_coupling_ratio, p.q_convention, workers
    )


def _dispersive_table(p: DispersiveOverrides, workers: int) -> pd.DataFrame:
    q_values = np.geomspace(p.q_b_min, p.q_b_max, p.q_b_count).tolist()
    chis = [hz_to_angular(f) for f in np.linspace(-p.chi_max_hz, p.chi_max_hz, p.chi_count)]
    return sweep_dispersive_map(
        p.build(), q_values, chis, p.microwave_coupling_ratio, p.q_convention, workers
    )


def _entanglement_table(p: EntanglementOverrides, workers: int) -> pd.DataFrame:
    powers = np.geomspace(p.power_min_w, p.power_max_w, p.power_count).tolist()
    r0_values = (
        np.geomspace(p.r0_min, p.r0_max, p.power_count).tolist()
        if p.r0_model is R0Model.DIRECT
        else None
    )
    params = EntanglementProtocolParams(
        generation_rate=0.0,
        attempt_duration=p.attempt_duration_s,
        reset_time=p.reset_time_s,
        scheme=p.scheme,
    )
    return sweep_power(
        params,
        p.build(),
        powers,
        p.r0_model,
        r0_values,
        attempts=p.attempts if p.monte_carlo else None,
        seed=p.seed,
        partitions=settings.mc_partitions,
        workers=workers,
    )


def _noise_table(p: NoiseOverrides, workers: int) -> pd.DataFrame:
    op = p.build()
    params = p.sensing_params(op)
    powers = np.geomspace(p.power_min_w, p.power_max_w, p.power_count).tolist()
    return sweep_noise_vs_power(params, op, powers, hz_to_angular(p.detuning_hz), workers)


@dataclass(frozen=True)
class Figure:
    name: str
    caption: str
    overrides: type[OperatingPointSpec]
    builder: Callable[[Any, int], pd.DataFrame]
    # extra tables written next to the main one as <name>_<suffix>.csv
    companions: Mapping[str, Callable[[Any, int], pd.DataFrame]] = field(default_factory=dict)


FIGURES: dict[str, Figure] = {
    figure.name: figure
    for figure in (
        Figure("fig3c", "pump photon number vs optical coupling", CouplingOverrides, _coupling_table),
        Figure("fig3d", "cooperativity vs optical coupling", CouplingOverrides, _coupling_table),
        Figure("fig3e", "conversion efficiency vs optical coupling", CouplingOverrides, _coupling_table),
        Figure("fig4a", "cooperativity vs pump power", PowerOverrides, _power_table),
        Figure("fig4b", "conversion efficiency vs pump power", PowerOverrides, _power_table),
        Figure(
            "fig4c",
            "conversion efficiency vs detuning and microwave Q",
            BandwidthOverrides,
            _detuning_map_table,
            companions={"bandwidth": _bandwidth_table},
        ),
        Figure("fig5b", "readout efficiency vs microwave Q and dispersive shift", DispersiveOverrides, _dispersive_table),
        Figure("fig6a", "entanglement rate vs pump power", EntanglementOverrides, _entanglement_table),
        Figure("fig6b", "entanglement infidelity vs pump power", EntanglementOverrides, _entanglement_table),
        Figure("fig7", "SQL-normalised noise vs pump power", NoiseOverrides, _noise_table),
    )
}


@dataclass(frozen=True)
class RunOutputs:
    table: Path
    manifest: Path
    extras: tuple[Path, ...] = ()


def parse_assignments(items: Sequence[str]) -> dict[str, str]:
    """Turn ["k=v", ...] into a mapping; later assignments win."""
    parsed: dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(ERR_ASSIGNMENT.format(item=item))
        parsed[key.strip()] = value.strip()
    return parsed


def resolve_overrides(name: str, assignments: dict[str, Any]) -> OperatingPointSpec:
    figure = FIGURES.get(name)
    if figure is None:
        raise UsageError(ERR_UNKNOWN_FIGURE.format(name=name, choices=", ".join(FIGURES)))
    try:
        return figure.overrides.model_validate(assignments)
    except ValidationError as exc:
        error = exc.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "parameters"
        if error["type"] == "extra_forbidden":
            raise UsageError(ERR_UNKNOWN_KEY.format(name=name, key=key)) from exc
        raise UsageError(
            ERR_BAD_VALUE.format(key=key, name=name, message=error["msg"])
        ) from exc


def run_figure(
    name: str,
    assignments: dict[str, Any] | None = None,
    output_dir: Path | None = None,
    workers: int | None = None,
) -> RunOutputs:
    """
    Reproduce one figure as data.

    Args:
        name: registry key, e.g. "fig3d"
        assignments: parameter overrides, validated by the figure's model
        output_dir: directory for `<name>.csv`, any `<name>_<suffix>.csv`
            companions and `<name>.manifest.json`
        workers: thread count for row-parallel sweeps

    Raises:
        UsageError: on an unknown figure name or a bad override
        OSError: if the outputs cannot be written
    """
    params = resolve_overrides(name, assignments or {})
    figure = FIGURES[name]
    out = output_dir if output_dir is not None else settings.output_dir
    started = time.perf_counter()
    threads = workers if workers is not None else settings.workers
    frame = figure.builder(params, threads)
    table = write_table(frame, out / f"{name}.csv")
    extras = tuple(
        write_table(build(params, threads), out / f"{name}_{suffix}.csv")
        for suffix, build in figure.companions.items()
    )
    seed = (
        params.seed
        if isinstance(params, EntanglementOverrides) and params.monte_carlo
        else None
    )
    manifest = RunManifest.for_outputs(
        command="figure",
        config={"figure": name, "parameters": params.model_dump(mode="json")},
        outputs=[table, *extras],
        wall_time_s=time.perf_counter() - started,
        seed=seed,
        rng=frame.attrs.get("rng"),
    ).write(out / f"{name}.manifest.json")
    logger.info("figure complete", figure=name, rows=len(frame), table=str(table))
    return RunOutputs(table=table, manifest=manifest, extras=extras)
