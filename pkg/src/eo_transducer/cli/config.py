"""
Declarative parameter sweeps.

A sweep config is a TOML file:

    schema_version = 1
    target = "efficiency_detuned"
    output_path = "map.csv"

    [fixed]
    q_convention = "loaded"
    cooperativity = 0.58

    [axis1]
    name = "q_b"
    min = 1e4
    max = 1e6
    count = 5
    scale = "log"

    [axis2]
    name = "detuning_hz"
    min = -1e6
    max = 1e6
    count = 41

Rows are the Cartesian product of the axes, axis1-major. Parameter names are
those of the target's parameter model, in Hz-domain units. Parse and schema
errors become ConfigError with the offending line and dotted field.
"""

import math
import re
import time
import tomllib
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Self

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from eo_transducer.cli.figures import RunOutputs
from eo_transducer.cli.manifest import RunManifest
from eo_transducer.cli.tables import write_table
from eo_transducer.converter import bandwidth, efficiency, efficiency_detuned
from eo_transducer.core.errors import ConfigError, DivisionGuardError, UndefinedBandwidthError
from eo_transducer.core.model import angular_to_hz, hz_to_angular
from eo_transducer.core.parallel import map_rows
from eo_transducer.entanglement import EntanglementProtocolParams, Scheme, herald
from eo_transducer.presets import OperatingPointSpec, SensingSpec
from eo_transducer.qed import readout_efficiency
from eo_transducer.sensing import noise_bae, noise_floors, noise_standard
from eo_transducer.settings import settings

logger = structlog.get_logger(__name__)

ERR_PARSE = "config is not valid TOML: {message}"
ERR_SCHEMA = "config does not match the sweep schema: {message}"
ERR_TARGET = "unknown sweep target '{target}'; choose from {choices}"
ERR_PARAMETER = "target '{target}' has no parameter '{name}'"
ERR_ROW = "invalid parameters for target '{target}': {message}"
ERR_DUPLICATE_AXIS = "axis2 repeats the axis1 parameter '{name}'"
ERR_EXCLUSIVE = "'{first}' and '{second}' cannot both be set"

# parameter pairs where one value replaces the other
EXCLUSIVE_PARAMETERS = (("pump_power_w", "cooperativity"), ("thermal_photons", "temperature_k"))

_TOML_POSITION = re.compile(r"at line (\d+), column (\d+)")
_TABLE_HEADER = re.compile(r"\[\s*([^\]]+?)\s*\]")


class AxisSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    min: float
    max: float
    count: int = Field(ge=2)
    scale: Literal["linear", "log"] = "linear"

    @model_validator(mode="after")
    def _check_range(self) -> Self:
        if not self.min < self.max:
            msg = "min must be below max"
            raise ValueError(msg)
        if self.scale == "log" and self.min <= 0.0:
            msg = "log scale requires min > 0"
            raise ValueError(msg)
        return self

    def values(self) -> list[float]:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count).tolist()
        return np.linspace(self.min, self.max, self.count).tolist()


class SweepSpec(BaseModel):
    """Validated sweep description."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    schema_version: Literal[1]
    target: str
    fixed: dict[str, float | bool | str] = Field(default_factory=dict)
    axis1: AxisSpec
    axis2: AxisSpec | None = None
    output_path: Path

    @property
    def axes(self) -> list[AxisSpec]:
        return [self.axis1] if self.axis2 is None else [self.axis1, self.axis2]


class DetunedPoint(OperatingPointSpec):
    detuning_hz: float = 0.0


class ReadoutPoint(OperatingPointSpec):
    chi_hz: float = 0.0


class HeraldPoint(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    r0_per_s: float = Field(default=0.0, ge=0)
    attempt_duration_s: float = Field(default=1e-6, gt=0)
    reset_time_s: float = Field(default=1e-6, ge=0)
    scheme: Scheme = Scheme.BLUE


def _efficiency(p: OperatingPointSpec) -> tuple[float, ...]:
    result = efficiency(p.build())
    return (result.pump_photons, result.cooperativity, result.total_efficiency)


def _efficiency_detuned(p: DetunedPoint) -> tuple[float, ...]:
    op = p.build()
    eta = efficiency_detuned(op, hz_to_angular(p.detuning_hz))
    try:
        width = angular_to_hz(bandwidth(op))
    except UndefinedBandwidthError as exc:
        logger.warning("bandwidth undefined", error=str(exc))
        width = math.nan
    return (eta, width)


def _readout(p: ReadoutPoint) -> tuple[float, ...]:
    return (readout_efficiency(p.build(), hz_to_angular(p.chi_hz)),)


def _noise(p: SensingSpec) -> tuple[float, ...]:
    op = p.build()
    params = p.sensing_params(op)
    delta = hz_to_angular(p.detuning_hz)
    _, s_sql = noise_floors(params, delta)
    try:
        return (
            params.cooperativity,
            noise_standard(params, delta) / s_sql,
            noise_bae(params, delta) / s_sql,
        )
    except DivisionGuardError as exc:
        logger.warning("noise row undefined", error=str(exc))
        return (params.cooperativity, math.nan, math.nan)


def _herald(p: HeraldPoint) -> tuple[float, ...]:
    outcome = herald(
        EntanglementProtocolParams(
            generation_rate=p.r0_per_s,
            attempt_duration=p.attempt_duration_s,
            reset_time=p.reset_time_s,
            scheme=p.scheme,
        )
    )
    return (outcome.rate, outcome.fidelity, outcome.infidelity)


@dataclass(frozen=True)
class Target:
    """A sweepable operation: its parameter model and output columns."""

    name: str
    parameters: type[BaseModel] | None
    outputs: tuple[str, ...]
    evaluate: Callable[[Any], tuple[float, ...]]


TARGETS: dict[str, Target] = {
    target.name: target
    for target in (
        # axis values pass straight through
        Target("identity", None, (), lambda _: ()),
        Target(
            "efficiency",
            OperatingPointSpec,
            ("n_pump", "cooperativity", "efficiency"),
            _efficiency,
        ),
        Target(
            "efficiency_detuned",
            DetunedPoint,
            ("efficiency", "bandwidth_Hz"),
            _efficiency_detuned,
        ),
        Target("readout_efficiency", ReadoutPoint, ("efficiency",), _readout),
        Target(
            "noise",
            SensingSpec,
            ("cooperativity", "s_standard_over_sql", "s_bae_over_sql"),
            _noise,
        ),
        Target("herald", HeraldPoint, ("rate_per_s", "fidelity", "infidelity"), _herald),
    )
}


def _line_of(text: str, loc: Sequence[int | str]) -> int | None:
    """1-based line defining the field at loc, or its table header."""
    if not loc:
        return None
    key = str(loc[-1])
    wanted_section = str(loc[0]) if len(loc) > 1 else None
    section: str | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = _TABLE_HEADER.fullmatch(line)
        if header:
            section = header.group(1)
            if len(loc) == 1 and section == key:
                return number
            continue
        if section == wanted_section and re.match(rf"{re.escape(key)}\s*=", line):
            return number
    return None


def parse_sweep_spec(text: str) -> SweepSpec:
    """
    Parse and validate a sweep config.

    Raises:
        ConfigError: with line and field diagnostics
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        position = _TOML_POSITION.search(str(exc))
        raise ConfigError(
            ERR_PARSE.format(message=exc),
            line=int(position.group(1)) if position else None,
        ) from exc
    try:
        spec = SweepSpec.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        loc = [part for part in error["loc"] if not isinstance(part, int)]
        raise ConfigError(
            ERR_SCHEMA.format(message=error["msg"]),
            line=_line_of(text, loc),
            field=".".join(str(part) for part in loc),
        ) from exc

    target = TARGETS.get(spec.target)
    if target is None:
        raise ConfigError(
            ERR_TARGET.format(target=spec.target, choices=", ".join(TARGETS)),
            line=_line_of(text, ["target"]),
            field="target",
        )
    if spec.axis2 is not None and spec.axis2.name == spec.axis1.name:
        raise ConfigError(
            ERR_DUPLICATE_AXIS.format(name=spec.axis1.name),
            line=_line_of(text, ["axis2", "name"]),
            field="axis2.name",
        )
    if target.parameters is not None:
        known = target.parameters.model_fields
        for axis_key, axis in (("axis1", spec.axis1), ("axis2", spec.axis2)):
            if axis is not None and axis.name not in known:
                raise ConfigError(
                    ERR_PARAMETER.format(target=target.name, name=axis.name),
                    line=_line_of(text, [axis_key, "name"]),
                    field=f"{axis_key}.name",
                )
        for name in spec.fixed:
            if name not in known:
                raise ConfigError(
                    ERR_PARAMETER.format(target=target.name, name=name),
                    line=_line_of(text, ["fixed", name]),
                    field=f"fixed.{name}",
                )
        _check_exclusive(spec, text)
    return spec


def _check_exclusive(spec: SweepSpec, text: str) -> None:
    locations = {name: ("fixed", name) for name in spec.fixed}
    for axis_key, axis in (("axis1", spec.axis1), ("axis2", spec.axis2)):
        if axis is not None:
            locations[axis.name] = (axis_key, "name")
    for first, second in EXCLUSIVE_PARAMETERS:
        if first in locations and second in locations:
            loc = locations[second]
            raise ConfigError(
                ERR_EXCLUSIVE.format(first=first, second=second),
                line=_line_of(text, loc),
                field=".".join(loc),
            )


def load_sweep_spec(path: Path) -> SweepSpec:
    """Read a sweep config; OSError propagates for the I/O exit code."""
    return parse_sweep_spec(path.read_text(encoding="utf-8"))


def evaluate_sweep(spec: SweepSpec, workers: int = 1) -> pd.DataFrame:
    """Evaluate every grid point of the sweep, axis1-major."""
    target = TARGETS[spec.target]
    names = [axis.name for axis in spec.axes]
    if spec.axis2 is None:
        grid = [(v,) for v in spec.axis1.values()]
    else:
        grid = [(v1, v2) for v1 in spec.axis1.values() for v2 in spec.axis2.values()]

    def row(point: tuple[float, ...]) -> tuple[Any, ...]:
        if target.parameters is None:
            return point
        values = {**spec.fixed, **dict(zip(names, point, strict=True))}
        try:
            params = target.parameters.model_validate(values)
        except ValidationError as exc:
            error = exc.errors()[0]
            field = ".".join(str(part) for part in error["loc"])
            raise ConfigError(
                ERR_ROW.format(target=target.name, message=error["msg"]), field=field
            ) from exc
        return (*point, *target.evaluate(params))

    frame = pd.DataFrame(map_rows(row, grid, workers), columns=[*names, *target.outputs])
    logger.info("sweep evaluated", target=target.name, rows=len(frame))
    return frame


def run_sweep(
    spec: SweepSpec, base_dir: Path | None = None, workers: int | None = None
) -> RunOutputs:
    """
    Evaluate a sweep, write its CSV and then its manifest.

    A relative output_path is resolved against base_dir (the config file's
    directory when run from the command line).
    """
    output = spec.output_path
    if not output.is_absolute():
        output = (base_dir or Path.cwd()) / output
    started = time.perf_counter()
    frame = evaluate_sweep(spec, workers if workers is not None else settings.workers)
    table = write_table(frame, output)
    manifest = RunManifest.for_outputs(
        command="sweep",
        config=spec.model_dump(mode="json"),
        outputs=[table],
        wall_time_s=time.perf_counter() - started,
    ).write(output.with_suffix(".manifest.json"))
    return RunOutputs(table=table, manifest=manifest)
