"""
Time-domain oracle for the coupled-mode equations.

Both integrators work in a frame where the steady state is a fixed point, so
convergence is a plain norm test on the amplitude change over one linewidth
time 2 / min(gamma_a, gamma_b).

Transduction frame (both drives detuned by Delta from their modes):

    da/dt = (i Delta - gamma_a/2) a + i g alpha b  - sqrt(gamma_ac) A_in
    db/dt = (i Delta - gamma_b/2) b + i g alpha* a - sqrt(gamma_bc) B_in

Dispersive readout, after the co-rotating substitution a~ = a^ e^{i chi t}:

    da^/dt = -(gamma_a/2) a^ + i g alpha b^
    db^/dt = -(gamma_b/2 + i chi) b^ + i g alpha* a^ - sqrt(gamma_bc) B_in
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Final

import numpy as np
import pandas as pd
import structlog

from eo_transducer.converter.steady_state import pump_amplitude
from eo_transducer.core.errors import InvalidParameterError
from eo_transducer.core.model import OperatingPoint
from eo_transducer.dynamics.integrator import DormandPrince, StepControl

logger = structlog.get_logger(__name__)

MAX_TOLERANCE: Final[float] = 1e-3
SAMPLES_PER_WINDOW: Final[int] = 8
# fraction of the largest amplitude below which a component counts as zero
AMPLITUDE_FLOOR: Final[float] = 1e-3
TRAJECTORY_COLUMNS: Final = ["time_s", "re_a", "im_a", "re_b", "im_b"]

ERR_HORIZON = "horizon must be positive and finite, got {value!r}"
ERR_TOLERANCE = "tolerance must lie in (0, {max}], got {value!r}"
ERR_AMPLITUDE = "drive amplitude must be finite, got {value!r}"
ERR_DETUNING = "drive detuning must be finite, got {value!r}"
ERR_FRAME = "optical and microwave drives must share one detuning ({a!r} != {b!r})"
ERR_DISPERSIVE_DETUNING = "the readout drive sits on the dressed resonance; detuning must be 0"
ERR_NOT_CONVERGED = "trajectory did not converge; no steady state to evaluate"
ERR_ZERO_DRIVE = "microwave drive amplitude is zero"


@dataclass(frozen=True)
class DriveTone:
    """Input field: amplitude in sqrt(photons/s), detuning from the mode in rad/s."""

    amplitude: complex = 0j
    detuning: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.amplitude.real) and math.isfinite(self.amplitude.imag)):
            raise InvalidParameterError(ERR_AMPLITUDE.format(value=self.amplitude))
        if not math.isfinite(self.detuning):
            raise InvalidParameterError(ERR_DETUNING.format(value=self.detuning))


@dataclass(frozen=True)
class TrajectoryResult:
    """
    Sampled trajectory and, if converged, the steady-state amplitudes.

    Attributes:
        times: sample times in s, strictly increasing, starting at 0
        a_amplitude: optical amplitude at each sample
        b_amplitude: microwave amplitude at each sample
        steady_state_a: final optical amplitude, None unless converged
        steady_state_b: final microwave amplitude, None unless converged
        converged: whether the window test passed before the horizon
    """

    times: np.ndarray
    a_amplitude: np.ndarray
    b_amplitude: np.ndarray
    steady_state_a: complex | None
    steady_state_b: complex | None
    converged: bool


def _check_run(horizon: float, tolerance: float) -> None:
    if not (horizon > 0.0 and math.isfinite(horizon)):
        raise InvalidParameterError(ERR_HORIZON.format(value=horizon))
    if not 0.0 < tolerance <= MAX_TOLERANCE:
        raise InvalidParameterError(
            ERR_TOLERANCE.format(max=MAX_TOLERANCE, value=tolerance)
        )


def _relative_change(old: np.ndarray, new: np.ndarray, scale: float) -> float:
    diff = np.abs(new - old)
    floor = max(AMPLITUDE_FLOOR * float(np.max(np.abs(new))), scale)
    denominator = np.maximum(np.abs(new), floor)
    if not np.any(denominator > 0.0):
        return 0.0 if not np.any(diff > 0.0) else math.inf
    return float(np.max(diff / denominator))


def _run(
    matrix: np.ndarray,
    forcing: np.ndarray,
    window: float,
    horizon: float,
    tolerance: float,
    initial: np.ndarray,
    fixed_step: float | None,
    control: StepControl,
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Integrate y' = M y + f window by window; returns (times, states, converged)."""

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        return matrix @ y + forcing

    stepper = DormandPrince(rhs, control)
    sub = window / SAMPLES_PER_WINDOW
    # start well inside the stability region of the fastest mode
    h = min(sub, 0.1 / float(np.max(np.abs(np.diag(matrix)))))
    scale = float(np.max(np.abs(initial)))

    times = [0.0]
    states = [initial]
    y = initial
    window_start = initial
    t = 0.0
    k = 0
    converged = False
    while t < horizon:
        k += 1
        t_next = min(k * sub, horizon)
        if fixed_step is None:
            y, h = stepper.advance(t, y, t_next, h)
        else:
            y = stepper.fixed(t, y, t_next, fixed_step)
        t = t_next
        times.append(t)
        states.append(y)
        if k % SAMPLES_PER_WINDOW == 0 and t_next == k * sub:
            if _relative_change(window_start, y, scale) < tolerance:
                converged = True
                break
            window_start = y

    logger.debug(
        "integration finished",
        converged=converged,
        t_end=t,
        steps=stepper.steps_taken,
        rejected=stepper.steps_rejected,
    )
    return np.asarray(times), np.asarray(states), converged


def _result(
    times: np.ndarray, states: np.ndarray, converged: bool
) -> TrajectoryResult:
    final = states[-1]
    return TrajectoryResult(
        times=times,
        a_amplitude=states[:, 0].copy(),
        b_amplitude=states[:, 1].copy(),
        steady_state_a=complex(final[0]) if converged else None,
        steady_state_b=complex(final[1]) if converged else None,
        converged=converged,
    )


def integrate(
    op: OperatingPoint,
    optical_drive: DriveTone,
    microwave_drive: DriveTone,
    horizon: float,
    tolerance: float,
    *,
    initial: tuple[complex, complex] = (0j, 0j),
    fixed_step: float | None = None,
    control: StepControl | None = None,
) -> TrajectoryResult:
    """
    Integrate the driven coupled-mode equations until steady state or horizon.

    Args:
        op: operating point; the pump amplitude alpha follows from its pump drive
        optical_drive: A_in tone; its detuning defines the rotating frame
        microwave_drive: B_in tone; must carry the same detuning
        horizon: maximum integration time, s
        tolerance: relative amplitude change per linewidth time that counts
            as converged, in (0, 1e-3]
        initial: (a, b) at t = 0
        fixed_step: integrate with constant steps of this size instead of
            adaptive stepping
        control: step-size controller settings

    Returns:
        TrajectoryResult; converged is False if the horizon ran out first

    Raises:
        DivergenceError: if the state becomes non-finite
    """
    _check_run(horizon, tolerance)
    if optical_drive.detuning != microwave_drive.detuning:
        raise InvalidParameterError(
            ERR_FRAME.format(a=optical_drive.detuning, b=microwave_drive.detuning)
        )
    delta = optical_drive.detuning
    alpha = pump_amplitude(op)
    matrix = np.array(
        [
            [complex(-op.gamma_a / 2.0, delta), 1j * op.g_eo * alpha],
            [1j * op.g_eo * np.conj(alpha), complex(-op.gamma_b / 2.0, delta)],
        ],
        dtype=complex,
    )
    forcing = np.array(
        [
            -math.sqrt(op.optical_signal.coupling_rate) * optical_drive.amplitude,
            -math.sqrt(op.microwave.coupling_rate) * microwave_drive.amplitude,
        ],
        dtype=complex,
    )
    window = 2.0 / min(op.gamma_a, op.gamma_b)
    times, states, converged = _run(
        matrix,
        forcing,
        window,
        horizon,
        tolerance,
        np.array(initial, dtype=complex),
        fixed_step,
        control or StepControl(),
    )
    return _result(times, states, converged)


def integrate_dispersive(
    op: OperatingPoint,
    chi: float,
    microwave_drive: DriveTone,
    horizon: float,
    tolerance: float,
    *,
    initial: tuple[complex, complex] = (0j, 0j),
    control: StepControl | None = None,
) -> TrajectoryResult:
    """
    Integrate the interaction-picture readout equations with a dispersive shift.

    The trajectory is reported in the interaction picture (a~, b~); the steady
    state is the complex amplitude of the e^{i chi t} component.
    """
    _check_run(horizon, tolerance)
    if not math.isfinite(chi):
        raise InvalidParameterError(ERR_DETUNING.format(value=chi))
    if microwave_drive.detuning != 0.0:
        raise InvalidParameterError(ERR_DISPERSIVE_DETUNING)
    alpha = pump_amplitude(op)
    matrix = np.array(
        [
            [complex(-op.gamma_a / 2.0, 0.0), 1j * op.g_eo * alpha],
            [1j * op.g_eo * np.conj(alpha), complex(-op.gamma_b / 2.0, -chi)],
        ],
        dtype=complex,
    )
    forcing = np.array(
        [0j, -math.sqrt(op.microwave.coupling_rate) * microwave_drive.amplitude],
        dtype=complex,
    )
    window = 2.0 / min(op.gamma_a, op.gamma_b)
    times, states, converged = _run(
        matrix,
        forcing,
        window,
        horizon,
        tolerance,
        np.array(initial, dtype=complex),
        None,
        control or StepControl(),
    )
    result = _result(times, states, converged)
    phase = np.exp(1j * chi * times)
    return TrajectoryResult(
        times=result.times,
        a_amplitude=result.a_amplitude * phase,
        b_amplitude=result.b_amplitude * phase,
        steady_state_a=result.steady_state_a,
        steady_state_b=result.steady_state_b,
        converged=result.converged,
    )


def conversion_efficiency(
    result: TrajectoryResult, op: OperatingPoint, microwave_drive: DriveTone
) -> float:
    """Microwave-to-optical efficiency |sqrt(gamma_ac) a_ss / B_in|^2 of a converged run."""
    if not result.converged or result.steady_state_a is None:
        raise InvalidParameterError(ERR_NOT_CONVERGED)
    if microwave_drive.amplitude == 0:
        raise InvalidParameterError(ERR_ZERO_DRIVE)
    return (
        op.optical_signal.coupling_rate
        * abs(result.steady_state_a) ** 2
        / abs(microwave_drive.amplitude) ** 2
    )


def write_trajectory_csv(result: TrajectoryResult, path: Path) -> Path:
    """Dump the sampled trajectory as `time_s,re_a,im_a,re_b,im_b`."""
    frame = pd.DataFrame(
        {
            "time_s": result.times,
            "re_a": result.a_amplitude.real,
            "im_a": result.a_amplitude.imag,
            "re_b": result.b_amplitude.real,
            "im_b": result.b_amplitude.imag,
        },
        columns=TRAJECTORY_COLUMNS,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    logger.info("trajectory written", path=str(path), samples=len(frame))
    return path
